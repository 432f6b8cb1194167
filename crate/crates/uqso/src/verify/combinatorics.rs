//! Purely combinatorial checks: regularity, pictures, overlays, counts.

use std::collections::BTreeSet;

use super::pairs::fmt_set;
use super::{case, seeded, Case, Ctx, Outcome};
use crate::borel::pbw_count;
use crate::freealg::Sign;
use crate::params::psi;
use crate::schemes::{
    all_subsets, count_root_sequences, enumerate_root_sequences, has_gra3_form, is_balanced, is_regular,
    regular_sets, rho_columns, Cell, Color, Overlay, RowPair, Scheme, SchemePair,
};

/// Regularity read off a painted row of labels, kept apart from the library
/// version on purpose.
fn painted_regular(n: usize, k: i64, m: i64, set: &BTreeSet<i64>, color: Color) -> bool {
    let nn = n as i64;
    if m <= nn || k > nn {
        return true;
    }
    if m == psi(n, k) {
        return false;
    }
    // paint[l - (k-1)] for labels k-1..=m: true = in S ∪ {k-1, m}
    let paint: Vec<bool> = (k - 1..=m).map(|l| l == k - 1 || l == m || set.contains(&l)).collect();
    let at = |l: i64| paint[(l - (k - 1)) as usize];
    let partner = |i: i64| psi(n, i) - 1;
    let in_range = |i: i64| (k..=m + 1).contains(&psi(n, i));
    match color {
        Color::White => (k - 1..m).filter(|&i| in_range(i)).all(|i| !(at(i) && at(partner(i)))),
        Color::Black => (k..=m).filter(|&i| in_range(i)).all(|i| {
            let inner = |l: i64| l != k - 1 && l != m && at(l);
            inner(i) || inner(partner(i))
        }),
    }
}

fn repaint(cols: &[RowPair], label: i64, color: Color) -> Vec<RowPair> {
    let fix = |c: Option<Cell>| c.map(|c| if c.label == label { Cell { color, ..c } } else { c });
    cols.iter().map(|p| RowPair { upper: fix(p.upper), lower: fix(p.lower) }).collect()
}

fn has_mono_column(cols: &[RowPair], color: Color) -> bool {
    cols.iter().any(|p| matches!((p.upper, p.lower), (Some(a), Some(b)) if a.color == color && b.color == color))
}

/// Rows swapped, colors flipped where `flip` says so; labels are ignored.
fn swapped_colors(cols: &[RowPair], flip: impl Fn(i64) -> bool) -> Vec<(Option<Color>, Option<Color>)> {
    let tr = |c: Option<Cell>| c.map(|c| if flip(c.label) { c.color.flip() } else { c.color });
    cols.iter().map(|p| (tr(p.lower), tr(p.upper))).collect()
}

fn colors(cols: &[RowPair]) -> Vec<(Option<Color>, Option<Color>)> {
    cols.iter().map(|p| (p.upper.map(|c| c.color), p.lower.map(|c| c.color))).collect()
}

pub fn counts(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let top = 2 * n as i64;
    let mut cases = Vec::new();
    for r in 1..=n {
        cases.push(case(format!("roots/{r}"), move |_| {
            let formula: u128 = (1..=r).map(|i| (2 * r - 2 * i + 2) as u128).product();
            let seqs: Vec<_> = enumerate_root_sequences(r).collect();
            let sorted = seqs.windows(2).all(|w| w[0] < w[1]);
            Ok(Outcome::all([
                (
                    "formula".to_string(),
                    Outcome::check(count_root_sequences(r) == formula, || {
                        format!("count {} vs product {formula}", count_root_sequences(r))
                    }),
                ),
                (
                    "enumeration".to_string(),
                    Outcome::check(seqs.len() as u128 == formula && sorted, || {
                        format!("enumerated {} (sorted: {sorted})", seqs.len())
                    }),
                ),
            ]))
        }));
    }
    cases.push(case(format!("pairs/{n}"), move |_| {
        let c = count_root_sequences(n);
        let want: u128 = (1..=n).map(|i| (2 * n - 2 * i + 2) as u128).product::<u128>().pow(2);
        Ok(Outcome::check(c * c == want, || format!("{} pairs, expected {want}", c * c)))
    }));
    for k in 1..=top {
        for m in k..=top {
            cases.push(case(format!("census/{k},{m}"), move |ctx| {
                let n = ctx.n();
                let mut parts = Vec::new();
                for color in [Color::White, Color::Black] {
                    let lib = regular_sets(n, k, m, color);
                    let oracle: Vec<_> = all_subsets(k, m)
                        .into_iter()
                        .filter(|s| painted_regular(n, k, m, s, color))
                        .collect();
                    parts.push((
                        format!("{color:?}"),
                        Outcome::check(lib == oracle, || format!("library {lib:?}, brute force {oracle:?}")),
                    ));
                }
                Ok(Outcome::all(parts))
            }));
        }
    }
    // dimensions of the quotient against the PBW partition count
    let max_total = if n <= 2 { 5 } else { 3 };
    let mut d = vec![0u32; n];
    loop {
        let total: u32 = d.iter().sum();
        if total > 0 && total as usize <= max_total {
            let d2 = d.clone();
            cases.push(case(format!("pbw/{d:?}"), move |ctx| {
                let dim = ctx.quot.positive_dimension(&d2)?;
                let want = pbw_count(ctx.n(), &d2);
                Ok(Outcome::check(dim == want, || format!("quotient {dim}, PBW {want}")))
            }));
        }
        let mut i = 0;
        while i < n {
            d[i] += 1;
            if d[i] as usize <= max_total {
                break;
            }
            d[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    cases
}

pub fn checker_consistency(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let top = 2 * n as i64;
    let mut cases = Vec::new();
    for k in 1..=top {
        for m in k..=top {
            cases.push(case(format!("dop/{k},{m}"), move |ctx| {
                let n = ctx.n();
                let bad: Vec<_> = all_subsets(k, m)
                    .into_iter()
                    .filter(|s| {
                        let bar: BTreeSet<i64> = (k..m).filter(|x| !s.contains(x)).collect();
                        is_regular(n, k, m, s, Color::White) != is_regular(n, k, m, &bar, Color::Black)
                            || is_regular(n, k, m, s, Color::Black) != is_regular(n, k, m, &bar, Color::White)
                    })
                    .collect();
                Ok(Outcome::check(bad.is_empty(), || format!("counterexamples {bad:?}")))
            }));
            cases.push(case(format!("dop1/{k},{m}"), move |ctx| {
                let n = ctx.n();
                let bad: Vec<_> = all_subsets(k, m)
                    .into_iter()
                    .filter(|s| {
                        let r = Scheme::positive(n, k, m, s.iter().copied()).expect("valid interval").reflect();
                        [Color::White, Color::Black]
                            .iter()
                            .any(|&c| is_regular(n, k, m, s, c) != r.is_regular(c))
                    })
                    .collect();
                Ok(Outcome::check(bad.is_empty(), || format!("counterexamples {bad:?}")))
            }));
            for set in all_subsets(k, m) {
                let sch = Scheme::positive(n, k, m, set.iter().copied()).expect("valid interval");
                let tag = format!("{k},{m},{}", fmt_set(&set));
                let white = sch.is_regular(Color::White);
                let black = sch.is_regular(Color::Black);
                if white || black {
                    let sch = sch.clone();
                    cases.push(case(format!("si/{tag}"), move |ctx| {
                        let n = ctx.n();
                        let mut parts = Vec::new();
                        for t in k - 1..m {
                            for s in t + 1..=m {
                                let sub = |c| is_regular(n, 1 + t, s, &sch.set, c);
                                if white && sch.color(s) == Some(Color::Black) {
                                    let p = psi(n, t) - 1;
                                    let crit = sch.color(p) == Some(Color::White) || !(t..=s).contains(&p);
                                    parts.push((
                                        format!("si:{t},{s}"),
                                        Outcome::check(sub(Color::White) == crit, || {
                                            format!("sub-regular {}, criterion {crit}", sub(Color::White))
                                        }),
                                    ));
                                }
                                if black && sch.color(t) == Some(Color::White) {
                                    let p = psi(n, s) - 1;
                                    let crit = sch.color(p) == Some(Color::Black) || !(t..=s).contains(&p);
                                    parts.push((
                                        format!("si1:{t},{s}"),
                                        Outcome::check(sub(Color::Black) == crit, || {
                                            format!("sub-regular {}, criterion {crit}", sub(Color::Black))
                                        }),
                                    ));
                                }
                            }
                        }
                        Ok(Outcome::all(parts))
                    }));
                }
                if sch.straddles() {
                    cases.push(case(format!("shifted/{tag}"), move |_| {
                        let cols = sch.shifted_columns()?;
                        let w = !has_mono_column(&repaint(&cols, k - 1, Color::Black), Color::Black);
                        let b = !has_mono_column(&repaint(&cols, m, Color::White), Color::White);
                        let ends = |l: i64| l == sch.k - 1 || l == sch.m;
                        let refl = sch.reflect().shifted_columns()?;
                        let star = sch.star().shifted_columns()?;
                        Ok(Outcome::all([
                            ("white".to_string(), Outcome::check(w == white, || format!("picture {w}, definition {white}"))),
                            ("black".to_string(), Outcome::check(b == black, || format!("picture {b}, definition {black}"))),
                            (
                                "reflect".to_string(),
                                Outcome::check(colors(&refl) == swapped_colors(&cols, ends), || "reflected picture differs".into()),
                            ),
                            (
                                "star".to_string(),
                                Outcome::check(colors(&star) == swapped_colors(&cols, |_| true), || "star picture differs".into()),
                            ),
                        ]))
                    }));
                }
            }
        }
    }
    let trials = ctx.opts.trials.unwrap_or(1000);
    for t in 0..trials as u64 {
        cases.push(case(format!("bal2/{t:04}"), move |ctx| {
            let n = ctx.n();
            let mut rng = seeded(ctx, 0x500 + t);
            let pick = |rng: &mut _, sign| loop {
                if let Some(s) = Scheme::random_regular(n, sign, rng) {
                    break s;
                }
            };
            let pos = pick(&mut rng, Sign::Positive);
            let neg = pick(&mut rng, Sign::Negative);
            let pair = SchemePair::new(pos.clone(), neg.clone());
            let verdict = pair.bale_check()?;
            let mut parts = Vec::new();
            for o in Overlay::ALL {
                let cols = pair.overlay(o);
                let partner = pair.overlay(o.rho());
                parts.push((
                    format!("rho:{}", o.name()),
                    Outcome::check(rho_columns(n, &cols) == partner, || format!("ρ({}) ≠ {}", o.name(), o.rho().name())),
                ));
                parts.push((
                    format!("flags:{}", o.name()),
                    Outcome::check(
                        is_balanced(&cols) == is_balanced(&partner) && has_gra3_form(&cols) == has_gra3_form(&partner),
                        || "balanced/gra3 flags differ".into(),
                    ),
                ));
            }
            for (tag, other) in [
                ("star-pos", SchemePair::new(pos.star(), neg.clone())),
                ("star-neg", SchemePair::new(pos.clone(), neg.star())),
            ] {
                let v = other.bale_check()?;
                parts.push((
                    tag.to_string(),
                    Outcome::check(v.passes == verdict.passes, || format!("{} vs {}", verdict.passes, v.passes)),
                ));
            }
            Ok(Outcome::all(parts))
        }));
    }
    cases
}
