//! Brackets of positive generators with negative ones.

use std::collections::BTreeSet;

use super::{case, Case, Ctx, Outcome};
use crate::borel::proportionality;
use crate::freealg::{antipode, bracket, counts, multiply, project_positive, Element, GroupElement, Sign};
use crate::generators::interval_counts;
use crate::params::{fold, psi};
use crate::schemes::{columns_of, is_regular, regular_sets, Color, Scheme, SchemePair};
use crate::Result;

const POS: Sign = Sign::Positive;
const NEG: Sign = Sign::Negative;

fn within(x: i64, a: i64, b: i64) -> bool {
    a <= x && x <= b
}

/// Every (k, m, S) with S regular of either color.
pub(super) fn regular_triples(n: usize) -> Vec<(i64, i64, BTreeSet<i64>)> {
    let top = 2 * n as i64;
    let mut out = Vec::new();
    for k in 1..=top {
        for m in k..=top {
            let mut sets = regular_sets(n, k, m, Color::White);
            for s in regular_sets(n, k, m, Color::Black) {
                if !sets.contains(&s) {
                    sets.push(s);
                }
            }
            sets.sort();
            out.extend(sets.into_iter().map(|s| (k, m, s)));
        }
    }
    out
}

pub(super) fn fmt_set(s: &BTreeSet<i64>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn complement(k: i64, m: i64, s: &BTreeSet<i64>) -> BTreeSet<i64> {
    (k..m).filter(|x| !s.contains(x)).collect()
}

fn one_minus_h(n: usize, k: i64, m: i64) -> Element {
    Element::one(n).sub(&Element::group(GroupElement::h_range(n, k, m)))
}

pub fn single_letter_brackets(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let top = 2 * n as i64;
    let mut cases = Vec::new();
    for k in 1..=top {
        for m in k + 1..=top {
            for i in 1..=n {
                let (hit_k, hit_m) = (i == fold(n, k), i == fold(n, m));
                if (hit_k || hit_m) && m == psi(n, k) {
                    continue;
                }
                cases.push(case(format!("kom1/{k},{m},{i}"), move |ctx| {
                    let n = ctx.n();
                    let lhs = bracket(&ctx.spec, &ctx.gens.u(k, m, POS)?, &Element::xm(n, i))?;
                    if hit_k {
                        let h = Element::group(GroupElement::h(n, fold(n, k)));
                        ctx.proportional(&lhs, &multiply(&ctx.spec, &h, &ctx.gens.u(k + 1, m, POS)?))
                    } else if hit_m {
                        ctx.proportional(&lhs, &ctx.gens.u(k, m - 1, POS)?)
                    } else {
                        ctx.vanishes(&lhs)
                    }
                }));
            }
        }
    }
    // the negative factors on the right carry the minus sign, as in the proof
    for i in 1..=top {
        for j in i + 1..=top {
            for k in 1..=n {
                let (hit_i, hit_j) = (k == fold(n, i), k == fold(n, j));
                if (hit_i || hit_j) && j == psi(n, i) {
                    continue;
                }
                cases.push(case(format!("kom2/{k},{i},{j}"), move |ctx| {
                    let n = ctx.n();
                    let lhs = bracket(&ctx.spec, &Element::x(n, k), &ctx.gens.u(i, j, NEG)?)?;
                    if hit_i {
                        let h = Element::group(GroupElement::h(n, fold(n, i)));
                        ctx.proportional(&lhs, &multiply(&ctx.spec, &h, &ctx.gens.u(i + 1, j, NEG)?))
                    } else if hit_j {
                        ctx.proportional(&lhs, &ctx.gens.u(i, j - 1, NEG)?)
                    } else {
                        ctx.vanishes(&lhs)
                    }
                }));
            }
        }
    }
    for k in 1..=top {
        for m in k..=top {
            for i in 1..=top {
                for j in i..=top {
                    let outside = |a: &[i64], lo, hi| a.iter().all(|&x| !within(x, lo, hi));
                    let first = outside(&[k, m, psi(n, k), psi(n, m)], i, j);
                    let second = outside(&[i, j, psi(n, i), psi(n, j)], k, m);
                    if first || second {
                        cases.push(case(format!("ruk3/{k},{m},{i},{j}"), move |ctx| {
                            ctx.vanishes(&bracket(&ctx.spec, &ctx.gens.u(k, m, POS)?, &ctx.gens.u(i, j, NEG)?)?)
                        }));
                    }
                }
            }
        }
    }
    cases
}

pub fn vanishing(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let top = 2 * n as i64;
    let mut cases = Vec::new();
    for k in 1..=top {
        for m in k..=top {
            for i in 1..=top {
                for j in i..=top {
                    if i == k || j == m {
                        continue;
                    }
                    let run = move |ctx: &Ctx| {
                        ctx.vanishes(&bracket(&ctx.spec, &ctx.gens.u(k, m, POS)?, &ctx.gens.u(i, j, NEG)?)?)
                    };
                    if !within(psi(n, m), i, j) && !within(psi(n, k), i, j) {
                        cases.push(case(format!("ruk4/{k},{m},{i},{j}"), run));
                    }
                    if !within(psi(n, j), k, m) && !within(psi(n, i), k, m) {
                        cases.push(case(format!("ruk5/{k},{m},{i},{j}"), run));
                    }
                }
            }
        }
    }
    cases
}

pub fn cross_values(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let top = 2 * n as i64;
    let mut cases = Vec::new();
    for k in 1..=top {
        for m in k..=top {
            for i in 1..=top {
                for j in i..=top {
                    let (pk, pm, pi, pj) = (psi(n, k), psi(n, m), psi(n, i), psi(n, j));
                    if i == k || j == m || !(pj <= k && k <= pi && pi <= m) || (pm == i && pk == j) {
                        continue;
                    }
                    cases.push(case(format!("fkk1/{k},{m},{i},{j}"), move |ctx| {
                        let (s, g, n) = (&ctx.spec, &ctx.gens, ctx.n());
                        let lhs = bracket(s, &g.u(k, m, POS)?, &g.u(i, j, NEG)?)?;
                        let h = Element::group(GroupElement::h_range(n, k, pi));
                        let rhs = multiply(s, &h, &multiply(s, &g.u(pk + 1, j, NEG)?, &g.u(pi + 1, m, POS)?));
                        ctx.proportional(&lhs, &rhs)
                    }));
                }
            }
            if m != psi(n, k) {
                cases.push(case(format!("dus1/{k},{m}"), move |ctx| {
                    let g = &ctx.gens;
                    let lhs = bracket(&ctx.spec, &g.u(k, m, POS)?, &g.u(psi(n, m), psi(n, k), NEG)?)?;
                    ctx.proportional(&lhs, &one_minus_h(ctx.n(), k, m))
                }));
            }
        }
    }
    for (k, m, set) in regular_triples(n) {
        cases.push(case(format!("des1/{k},{m},{}", fmt_set(&set)), move |ctx| {
            let g = &ctx.gens;
            let bar = complement(k, m, &set);
            let lhs = bracket(&ctx.spec, &g.phi(k, m, &set, POS)?, &g.phi(k, m, &bar, NEG)?)?;
            ctx.proportional(&lhs, &one_minus_h(ctx.n(), k, m))
        }));
    }
    cases
}

pub fn strong_schemes(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let triples = regular_triples(n);
    let mut cases = Vec::new();
    for (k, m, s) in &triples {
        for (i, j, t) in &triples {
            let pair = SchemePair::new(
                Scheme::positive(n, *k, *m, s.iter().copied()).expect("valid interval"),
                Scheme::negative(n, *i, *j, t.iter().copied()).expect("valid interval"),
            );
            if !pair.is_strong_pair() {
                continue;
            }
            let key = format!("str/{k},{m},{}|{i},{j},{}", fmt_set(s), fmt_set(t));
            let (k, m, s, i, j, t) = (*k, *m, s.clone(), *i, *j, t.clone());
            cases.push(case(key, move |ctx| {
                let g = &ctx.gens;
                ctx.vanishes(&bracket(&ctx.spec, &g.phi(k, m, &s, POS)?, &g.phi(i, j, &t, NEG)?)?)
            }));
        }
    }
    cases
}

pub fn dualities(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let nn = n as i64;
    let top = 2 * nn;
    let mut cases = Vec::new();
    for (k, m, set) in regular_triples(n) {
        let tag = format!("{k},{m},{}", fmt_set(&set));
        let sch = Scheme::positive(n, k, m, set.iter().copied()).expect("valid interval");
        let star = sch.star();
        let reflected = sch.reflect();
        {
            let set = set.clone();
            cases.push(case(format!("xn0/{tag}"), move |ctx| {
                let g = &ctx.gens;
                ctx.proportional(&g.phi(k, m, &set, POS)?, &g.phi(star.k, star.m, &star.set, POS)?)
            }));
        }
        {
            let set = set.clone();
            cases.push(case(format!("desc3/{tag}"), move |ctx| {
                let (s, g, n) = (&ctx.spec, &ctx.gens, ctx.n());
                let lhs = multiply(
                    s,
                    &Element::group(GroupElement::g_range(n, k, m)),
                    &antipode(s, &g.phi(k, m, &set, POS)?),
                );
                let mid = g.phi(reflected.k, reflected.m, &reflected.set, POS)?;
                let last = g.phi(k, m, &complement(k, m, &set), POS)?;
                Ok(Outcome::all([
                    ("antipode".to_string(), ctx.proportional(&lhs, &mid)?),
                    ("complement".to_string(), ctx.proportional(&mid, &last)?),
                ]))
            }));
        }
        let white = is_regular(n, k, m, &set, Color::White);
        let black = is_regular(n, k, m, &set, Color::Black);
        for t in k..m {
            let mut with_t = set.clone();
            with_t.insert(t);
            let mut without_t = set.clone();
            without_t.remove(&t);
            let first = (is_regular(n, k, m, &with_t, Color::White) && !set.contains(&t))
                || (black && (!set.contains(&t) || t == nn));
            if first {
                let set = set.clone();
                cases.push(case(format!("desc1/{tag}/{t}"), move |ctx| {
                    let g = &ctx.gens;
                    let rhs = bracket(&ctx.spec, &g.phi(k, t, &set, POS)?, &g.phi(1 + t, m, &set, POS)?)?;
                    ctx.proportional(&g.phi(k, m, &set, POS)?, &rhs)
                }));
            }
            let second = (white && (set.contains(&t) || t == nn))
                || (is_regular(n, k, m, &without_t, Color::Black) && set.contains(&t));
            if second {
                let set = set.clone();
                cases.push(case(format!("desc2/{tag}/{t}"), move |ctx| {
                    let g = &ctx.gens;
                    let rhs = bracket(&ctx.spec, &g.phi(1 + t, m, &set, POS)?, &g.phi(k, t, &set, POS)?)?;
                    ctx.proportional(&g.phi(k, m, &set, POS)?, &rhs)
                }));
            }
        }
    }
    for k in 1..=top {
        for m in k..=top {
            cases.push(case(format!("ant2/{k},{m}"), move |ctx| {
                let (s, g, n) = (&ctx.spec, &ctx.gens, ctx.n());
                let lhs = multiply(
                    s,
                    &Element::group(GroupElement::g_range(n, k, m)),
                    &antipode(s, &g.u(k, m, POS)?),
                );
                ctx.proportional(&lhs, &g.u(psi(n, m), psi(n, k), POS)?)
            }));
        }
    }
    cases
}

/// Splits a reduced element along (negative, positive) constitutions and
/// matches each expected product against its component. Returns the
/// coefficient per product, or a failure if a component is not a multiple
/// of its product or terms are left over.
fn ladder_coefficients(ctx: &Ctx, lhs: &Element, products: &[Element]) -> Result<std::result::Result<Vec<bool>, Outcome>> {
    let n = ctx.n();
    let key = |e: &Element| {
        e.terms()
            .next()
            .map(|(t, _)| (counts(n, &t.neg), counts(n, &t.pos)))
    };
    let total = ctx.quot.nf(lhs)?;
    let mut rest = total.clone();
    let mut nonzero = Vec::new();
    for (b, p) in products.iter().enumerate() {
        let p = ctx.quot.nf(p)?;
        let Some(k) = key(&p) else {
            return Ok(Err(Outcome::fail(format!("product #{b} reduces to zero"))));
        };
        let comp = total.map_terms(|t, c| {
            ((counts(n, &t.neg), counts(n, &t.pos)) == k).then(|| (t.clone(), c.clone()))
        });
        rest = rest.sub(&comp);
        if comp.is_zero() {
            nonzero.push(false);
            continue;
        }
        if proportionality(&comp, &p).is_none() {
            return Ok(Err(Outcome::sides(&comp, &p)));
        }
        nonzero.push(true);
    }
    if !rest.is_zero() {
        return Ok(Err(Outcome::fail(format!("terms outside the stated sum: {rest}"))));
    }
    Ok(Ok(nonzero))
}

fn ladder_outcome(ctx: &Ctx, lhs: &Element, products: &[Element], want: &[bool]) -> Result<Outcome> {
    Ok(match ladder_coefficients(ctx, lhs, products)? {
        Err(o) => o,
        Ok(got) => Outcome::check(got == want, || format!("nonzero coefficients {got:?}, expected {want:?}")),
    })
}

pub fn ladder(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let nn = n as i64;
    let top = 2 * nn;
    let mut cases = Vec::new();

    for k in 1..nn {
        for set in crate::schemes::all_subsets(k, nn) {
            for &s in set.iter().filter(|&&s| s < nn) {
                let set = set.clone();
                cases.push(case(format!("ed/{k},{}/{s}", fmt_set(&set)), move |ctx| {
                    let g = &ctx.gens;
                    let bar = complement(k, s, &set);
                    let lhs = bracket(&ctx.spec, &g.phi(k, nn, &set, POS)?, &g.phi(k, s, &bar, NEG)?)?;
                    ctx.proportional(&lhs, &g.phi(1 + s, nn, &set, POS)?)
                }));
            }
        }
    }

    for m in 1..=nn {
        for k in 1..=m {
            for i in 1..=m {
                if i == k {
                    continue;
                }
                for s in crate::schemes::all_subsets(k, m) {
                    for t in crate::schemes::all_subsets(i, m) {
                        let top_row = Scheme::positive(n, k, m, s.iter().copied()).expect("valid interval");
                        let bottom = Scheme::negative(n, i, m, t.iter().copied()).expect("valid interval");
                        let cols = columns_of(&top_row, &bottom);
                        let complete: Vec<_> = cols.iter().filter_map(|c| c.complete().map(|p| (c.label, p))).collect();
                        let bb: Vec<i64> = complete
                            .iter()
                            .filter(|(_, p)| *p == (Color::Black, Color::Black))
                            .map(|(l, _)| *l)
                            .collect();
                        let first_ww = complete.first().is_some_and(|(_, p)| *p == (Color::White, Color::White));
                        if bb != [m] || !first_ww {
                            continue;
                        }
                        let nu = i.max(k);
                        let want: Vec<bool> = (nu - 1..m)
                            .map(|b| top_row.color(b) == Some(Color::White) && bottom.color(b) == Some(Color::White))
                            .collect();
                        let key = format!("ed1/{k},{m},{}|{i},{}", fmt_set(&s), fmt_set(&t));
                        let s = s.clone();
                        cases.push(case(key, move |ctx| {
                            let g = &ctx.gens;
                            let lhs = bracket(&ctx.spec, &g.phi(k, m, &s, POS)?, &g.phi(i, m, &t, NEG)?)?;
                            let products = (nu - 1..m)
                                .map(|b| Ok(multiply(&ctx.spec, &g.phi(i, b, &t, NEG)?, &g.phi(k, b, &s, POS)?)))
                                .collect::<Result<Vec<_>>>()?;
                            ladder_outcome(ctx, &lhs, &products, &want)
                        }));
                    }
                }
            }
        }
    }

    for t in 1..=nn {
        for k in 2..=t {
            for i in 1..k {
                cases.push(case(format!("zz2/{k},{t},{i}"), move |ctx| {
                    let g = &ctx.gens;
                    let lhs = bracket(&ctx.spec, &g.u(k, t, POS)?, &g.u(i, t, NEG)?)?;
                    let products = (k - 1..t)
                        .map(|b| Ok(multiply(&ctx.spec, &g.u(i, b, NEG)?, &g.u(k, b, POS)?)))
                        .collect::<Result<Vec<_>>>()?;
                    ladder_outcome(ctx, &lhs, &products, &vec![true; products.len()])
                }));
            }
        }
    }

    for t in nn + 1..=top {
        for m in t..=top {
            for j in t..=top {
                if m == j {
                    continue;
                }
                let mu = m.min(j);
                cases.push(case(format!("zz3/{t},{m},{j}"), move |ctx| {
                    let (s, g, n) = (&ctx.spec, &ctx.gens, ctx.n());
                    let lhs = bracket(s, &g.u(t, m, POS)?, &g.u(t, j, NEG)?)?;
                    let products = (t + 1..=mu + 1)
                        .map(|a| {
                            let h = Element::group(GroupElement::h_range(n, t, a - 1));
                            Ok(multiply(s, &h, &multiply(s, &g.u(a, j, NEG)?, &g.u(a, m, POS)?)))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    ladder_outcome(ctx, &lhs, &products, &vec![true; products.len()])
                }));
            }
        }
    }

    for k in 1..=nn {
        for m in nn + 1..=top {
            for set in regular_sets(n, k, m, Color::Black) {
                cases.push(case(format!("xic/{k},{m},{}", fmt_set(&set)), move |ctx| {
                    let (g, n) = (&ctx.gens, ctx.n());
                    let bar = complement(k, nn, &set);
                    let lhs = bracket(&ctx.spec, &g.phi(k, m, &set, POS)?, &g.phi(k, nn, &bar, NEG)?)?;
                    let proj = project_positive(&ctx.quot.nf(&lhs)?);
                    if proj.is_zero() {
                        return Ok(Outcome::fail("projection vanishes"));
                    }
                    let want = interval_counts(n, nn + 1, m);
                    let ok = proj.terms().all(|(t, _)| counts(n, &t.pos) == want);
                    Ok(Outcome::check(ok, || format!("projection {proj} is not of degree {want:?}")))
                }));
            }
        }
    }
    cases
}
