//! Root monoids of the coideal subalgebras generated by one Φ.

use std::collections::BTreeSet;

use super::pairs::{fmt_set, regular_triples};
use super::{case, Case, Ctx, Outcome};
use crate::borel::{derive, integrability_check, SigmaMonoid, Variant};
use crate::freealg::{counts, Element, Sign};
use crate::generators::interval_counts;
use crate::params::psi;
use crate::schemes::{is_regular, Color, Scheme};
use crate::Result;

fn degree_of(ctx: &Ctx, f: &Element) -> Result<Option<Vec<i64>>> {
    let f = ctx.quot.nf(f)?;
    Ok(f.poly(Sign::Positive)?.keys().next().map(|w| counts(ctx.n(), w)))
}

/// Independent reading of the kernel form: walk all iterated derivatives
/// and require each one off Σ + D(u) to vanish.
fn kernel_oracle(ctx: &Ctx, mon: &SigmaMonoid, f: &Element) -> Result<bool> {
    let n = ctx.n();
    let f = ctx.quot.nf(f)?;
    let Some(df) = degree_of(ctx, &f)? else {
        return Ok(true);
    };
    let mut layer = vec![(f, vec![0i64; n])];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (g, du) in layer {
            let rest: Vec<i64> = df.iter().zip(&du).map(|(a, b)| a - b).collect();
            if !mon.member(&rest) {
                return Ok(false);
            }
            for i in 1..=n {
                let d = ctx.quot.nf(&derive(&ctx.spec, &g, i, Variant::D)?)?;
                if !d.is_zero() {
                    let mut du2 = du.clone();
                    du2[i - 1] += 1;
                    next.push((d, du2));
                }
            }
        }
        layer = next;
    }
    Ok(true)
}

fn white_black_pairs(sch: &Scheme) -> Vec<(i64, i64)> {
    let pts = sch.points();
    let mut out = Vec::new();
    for &(t, ct) in &pts {
        for &(s, cs) in &pts {
            if ct == Color::White && cs == Color::Black && t < s {
                out.push((t, s));
            }
        }
    }
    out
}

fn degree_vec(n: usize, a: i64, b: i64) -> Vec<i64> {
    interval_counts(n, a, b)
}

pub fn coideal_roots(ctx: &Ctx) -> Vec<Case> {
    let n = ctx.n();
    let nn = n as i64;
    let mut cases = Vec::new();
    for (k, m, set) in regular_triples(n) {
        let sch = Scheme::positive(n, k, m, set.iter().copied()).expect("valid interval");
        let tag = format!("{k},{m},{}", fmt_set(&set));
        let white = sch.is_regular(Color::White);
        let black = sch.is_regular(Color::Black);
        {
            let (sch, set) = (sch.clone(), set.clone());
            cases.push(case(format!("sig/{tag}"), move |ctx| {
                let mon = sch.sigma_generators();
                let f = ctx.gens.phi(k, m, &set, Sign::Positive)?;
                Ok(Outcome::all([
                    (
                        "degree".to_string(),
                        Outcome::check(mon.member(&degree_vec(ctx.n(), k, m)), || "D(Φ) ∉ Σ".into()),
                    ),
                    (
                        "integrable".to_string(),
                        Outcome::check(integrability_check(&ctx.quot, &mon, &f)?, || "Φ fails the kernel test".into()),
                    ),
                ]))
            }));
        }
        for (t, s) in white_black_pairs(&sch) {
            let not_black = sch.color(psi(n, 1 + t)) != Some(Color::Black);
            let not_white = sch.color(psi(n, 1 + s)) != Some(Color::White);
            let mut tags = Vec::new();
            if white && not_black {
                tags.push("sig1");
            }
            if black && not_white {
                tags.push("sig2");
            }
            for tag2 in tags {
                let (sch, set) = (sch.clone(), set.clone());
                cases.push(case(format!("{tag2}/{tag}/{t},{s}"), move |ctx| {
                    let mon = sch.sigma_generators();
                    let f = ctx.gens.phi(1 + t, s, &set, Sign::Positive)?;
                    Ok(Outcome::all([
                        (
                            "simple".to_string(),
                            Outcome::check(mon.is_indecomposable(&degree_vec(ctx.n(), 1 + t, s)), || {
                                "degree is decomposable".into()
                            }),
                        ),
                        (
                            "member".to_string(),
                            Outcome::check(integrability_check(&ctx.quot, &mon, &f)?, || "Φ(1+t,s) ∉ U".into()),
                        ),
                    ]))
                }));
            }
            if !(t < nn && nn < s) {
                let (sch2, set2) = (sch.clone(), set.clone());
                cases.push(case(format!("sig3/{tag}/{t},{s}"), move |ctx| {
                    let mon = sch2.sigma_generators();
                    let f = ctx.gens.phi(1 + t, s, &set2, Sign::Positive)?;
                    Ok(Outcome::check(integrability_check(&ctx.quot, &mon, &f)?, || "Φ(1+t,s) ∉ U".into()))
                }));
                let sub = Scheme::positive(n, 1 + t, s, set.iter().copied()).expect("valid interval");
                if sub.regular() {
                    let sch2 = sch.clone();
                    cases.push(case(format!("lat/{tag}/{t},{s}"), move |_| {
                        let big = sch2.sigma_generators();
                        let small = sub.sigma_generators();
                        let missing: Vec<_> = small
                            .gens
                            .iter()
                            .filter(|g| !big.member(&g.iter().map(|&x| x as i64).collect::<Vec<_>>()))
                            .collect();
                        Ok(Outcome::check(missing.is_empty(), || format!("not in Σ: {missing:?}")))
                    }));
                }
            }
        }
        // late1 and lat2 over every u[a,b] inside the interval plus the sub-generators
        let set = set.clone();
        let sch = sch.clone();
        cases.push(case(format!("late1/{tag}"), move |ctx| {
            let mon = sch.sigma_generators();
            let mut parts = Vec::new();
            for (label, f) in candidates(ctx, &sch, &set)? {
                let fast = integrability_check(&ctx.quot, &mon, &f)?;
                let slow = kernel_oracle(ctx, &mon, &f)?;
                parts.push((
                    format!("late1:{label}"),
                    Outcome::check(fast == slow, || format!("checker {fast}, direct walk {slow}")),
                ));
                let member = match degree_of(ctx, &f)? {
                    Some(d) => mon.member(&d),
                    None => true,
                };
                let mut closed = member;
                for i in 1..=ctx.n() {
                    if !closed {
                        break;
                    }
                    let d = derive(&ctx.spec, &f, i, Variant::D)?;
                    closed = integrability_check(&ctx.quot, &mon, &d)?;
                }
                parts.push((
                    format!("lat2:{label}"),
                    Outcome::check(fast == closed, || format!("integrable {fast}, degree+derivatives {closed}")),
                ));
            }
            Ok(Outcome::all(parts))
        }));
    }
    cases
}

fn candidates(ctx: &Ctx, sch: &Scheme, set: &BTreeSet<i64>) -> Result<Vec<(String, Element)>> {
    let mut out = Vec::new();
    for a in sch.k..=sch.m {
        for b in a..=sch.m {
            out.push((format!("u[{a},{b}]"), ctx.gens.u(a, b, Sign::Positive)?));
        }
    }
    for (t, s) in white_black_pairs(sch) {
        if is_regular(ctx.n(), 1 + t, s, set, Color::White) || is_regular(ctx.n(), 1 + t, s, set, Color::Black) {
            out.push((format!("Φ({},{s})", 1 + t), ctx.gens.phi(1 + t, s, set, Sign::Positive)?));
        }
    }
    Ok(out)
}
