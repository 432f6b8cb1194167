//! Distinguished elements: u[k,m], Φ^S(k,m), their negative and mirror forms,
//! and the σ/μ/τ/α coefficient tables.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::borel::{letter_poly, poly_bracket, poly_mul, Poly};
use crate::freealg::{counts, multiply, Element, GroupElement, MixedTerm, Sign, Word};
use crate::params::{fold, psi, spow, ParamSpec, Scalar};
use crate::{Error, Result};

/// Letters of the word u(k,m) = x_k ⋯ x_m, folded to 1..=n.
pub fn u_letters(n: usize, k: i64, m: i64) -> Vec<usize> {
    (k..=m).map(|i| fold(n, i)).collect()
}

/// Folded letter counts of u(k,m); empty when m < k.
pub fn interval_counts(n: usize, k: i64, m: i64) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for i in k..=m {
        c[fold(n, i) - 1] += 1;
    }
    c
}

fn check_interval(n: usize, k: i64, m: i64) -> Result<()> {
    if k < 1 || m > 2 * n as i64 || k > m {
        return Err(Error::Index(format!(
            "need 1 ≤ k ≤ m ≤ {}, got k={k}, m={m}",
            2 * n
        )));
    }
    Ok(())
}

/// τ_i = q if i = n, 1 otherwise.
pub fn tau(spec: &ParamSpec, i: i64) -> Scalar {
    if i == spec.n as i64 {
        spec.q.clone()
    } else {
        Scalar::one()
    }
}

/// p(u(a,b), u(c,d)).
pub fn pword(spec: &ParamSpec, a: i64, b: i64, c: i64, d: i64) -> Scalar {
    let n = spec.n;
    spec.pform_counts(&interval_counts(n, a, b), &interval_counts(n, c, d))
}

/// α_{km}^s = τ_s · p(u(1+s,m), u(k,s))⁻¹.
pub fn alpha(spec: &ParamSpec, k: i64, m: i64, s: i64) -> Scalar {
    tau(spec, s) / pword(spec, 1 + s, m, k, s)
}

/// σ_k^m = p(u(k,m), u(k,m)).
pub fn sigma_direct(spec: &ParamSpec, k: i64, m: i64) -> Scalar {
    pword(spec, k, m, k, m)
}

/// μ_k^{m,i} = p(u(k,i),u(i+1,m))·p(u(i+1,m),u(k,i)).
pub fn mu_direct(spec: &ParamSpec, k: i64, m: i64, i: i64) -> Scalar {
    pword(spec, k, i, i + 1, m) * pword(spec, i + 1, m, k, i)
}

pub fn sigma_closed(spec: &ParamSpec, k: i64, m: i64) -> Result<Scalar> {
    let n = spec.n as i64;
    check_interval(spec.n, k, m)?;
    let q = &spec.q;
    Ok(if m == n || k == n + 1 {
        q.clone()
    } else if m == psi(spec.n, k) {
        spow(q, 4)
    } else {
        spow(q, 2)
    })
}

pub fn mu_closed(spec: &ParamSpec, k: i64, m: i64, i: i64) -> Result<Scalar> {
    let n = spec.n as i64;
    check_interval(spec.n, k, m)?;
    if !(k <= i && i < m) {
        return Err(Error::Index(format!("μ needs k ≤ i < m, got k={k}, m={m}, i={i}")));
    }
    let q = &spec.q;
    let pk = psi(spec.n, k);
    let e = if m < pk {
        if m > n && i == psi(spec.n, m) - 1 {
            -4
        } else if i == n {
            0
        } else {
            -2
        }
    } else if m == pk {
        if i == n {
            2
        } else {
            0
        }
    } else if k <= n && i == pk {
        -4
    } else if i == n {
        0
    } else {
        -2
    };
    Ok(spow(q, e))
}

fn compute_u(spec: &ParamSpec, k: i64, m: i64) -> Poly {
    let n = spec.n;
    let x = |i: i64| letter_poly(fold(n, i));
    let pk = psi(n, k);
    if m < pk {
        (k + 1..=m).fold(x(k), |acc, i| poly_bracket(spec, &acc, &x(i)))
    } else if m > pk {
        (k..m).rev().fold(x(m), |acc, i| poly_bracket(spec, &x(i), &acc))
    } else {
        let nn = n as i64;
        let a = compute_u(spec, nn + 1, m);
        let b = compute_u(spec, k, nn);
        let beta = -pword(spec, nn + 1, m, k, nn).recip();
        poly_bracket(spec, &a, &b)
            .into_iter()
            .map(|(w, c)| (w, c * &beta))
            .collect()
    }
}

fn set_key(set: &BTreeSet<i64>, k: i64, m: i64) -> Vec<i64> {
    set.range(k..m).copied().collect()
}

type PolyCell = Arc<OnceLock<Arc<Poly>>>;

/// Constructors with compute-once caches, shareable across threads.
pub struct Generators {
    pub spec: ParamSpec,
    u_cache: Mutex<HashMap<(i64, i64), PolyCell>>,
    phi_cache: Mutex<HashMap<(i64, i64, Vec<i64>), PolyCell>>,
    mirrored: OnceLock<Box<Generators>>,
}

impl Generators {
    pub fn new(spec: &ParamSpec) -> Self {
        Generators {
            spec: spec.clone(),
            u_cache: Mutex::new(HashMap::new()),
            phi_cache: Mutex::new(HashMap::new()),
            mirrored: OnceLock::new(),
        }
    }

    /// Negative elements are built from the transposed parameter matrix:
    /// x⁻ letters skew-commute through p_ba where x letters use p_ab.
    fn side(&self, sign: Sign) -> &Generators {
        match sign {
            Sign::Positive => self,
            Sign::Negative => self.mirrored.get_or_init(|| Box::new(Generators::new(&self.spec.mirrored()))),
        }
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// u[k,m] as a positive polynomial.
    pub fn u_poly(&self, k: i64, m: i64) -> Result<Arc<Poly>> {
        check_interval(self.n(), k, m)?;
        let cell = self
            .u_cache
            .lock()
            .expect("u cache")
            .entry((k, m))
            .or_default()
            .clone();
        Ok(cell.get_or_init(|| Arc::new(compute_u(&self.spec, k, m))).clone())
    }

    /// u[k,m] or u[k,m]⁻. The empty interval m = k − 1 gives 1.
    pub fn u(&self, k: i64, m: i64, sign: Sign) -> Result<Element> {
        if m == k - 1 {
            return Ok(Element::one(self.n()));
        }
        let p = self.side(sign).u_poly(k, m)?;
        Ok(Element::from_poly(self.n(), sign, p.iter().map(|(w, c)| (w.clone(), c.clone()))))
    }

    /// Φ^S(k,m) as a positive polynomial.
    pub fn phi_poly(&self, k: i64, m: i64, set: &BTreeSet<i64>) -> Result<Arc<Poly>> {
        check_interval(self.n(), k, m)?;
        let key = (k, m, set_key(set, k, m));
        let cell = self
            .phi_cache
            .lock()
            .expect("phi cache")
            .entry(key.clone())
            .or_default()
            .clone();
        if let Some(p) = cell.get() {
            return Ok(p.clone());
        }
        let mut out: Poly = (*self.u_poly(k, m)?).clone();
        let q = &self.spec.q;
        let c0 = Scalar::one() - spow(q, -2);
        for &s in &key.2 {
            let a = alpha(&self.spec, k, m, s);
            let rest = self.phi_poly(1 + s, m, set)?;
            let us = self.u_poly(k, s)?;
            let c = -(&c0 * &a);
            for (w, x) in poly_mul(&rest, &us) {
                let e = out.entry(w.clone()).or_insert_with(Scalar::zero);
                *e += x * &c;
                if e.is_zero() {
                    out.remove(&w);
                }
            }
        }
        Ok(cell.get_or_init(|| Arc::new(out)).clone())
    }

    /// Φ^S(k,m) or Φ^S_-(k,m). Φ(k,k−1) = 1.
    pub fn phi(&self, k: i64, m: i64, set: &BTreeSet<i64>, sign: Sign) -> Result<Element> {
        if m == k - 1 {
            return Ok(Element::one(self.n()));
        }
        let p = self.side(sign).phi_poly(k, m, set)?;
        Ok(Element::from_poly(self.n(), sign, p.iter().map(|(w, c)| (w.clone(), c.clone()))))
    }
}

/// Substitutes x_i ↦ p_ii⁻¹x_i⁻, x_i⁻ ↦ −x_i, g_i ↔ f_i, multiplying out in
/// the target algebra. Applied term by term to the normal form, so it is
/// multiplicative on each Borel half but not across the mixed relation.
pub fn mirror(spec: &ParamSpec, a: &Element) -> Element {
    let n = spec.n;
    let mut out = Element::zero();
    for (t, c) in a.terms() {
        let mut acc = Element::scalar(n, c.clone());
        for &x in t.neg.iter() {
            acc = multiply(spec, &acc, &Element::x(n, x as usize + 1).neg());
        }
        let e = t.grp.exponents();
        let swapped: Vec<i32> = e[n..].iter().chain(&e[..n]).copied().collect();
        acc = multiply(spec, &acc, &Element::group(GroupElement::from_exponents(swapped)));
        for &x in t.pos.iter() {
            let y = Element::xm(n, x as usize + 1).scale(&spec.p[x as usize][x as usize].recip());
            acc = multiply(spec, &acc, &y);
        }
        out = out.add(&acc);
    }
    out
}

/// A table row for the CLI: indices and both evaluations.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TableRow {
    pub k: i64,
    pub m: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    pub closed: String,
    pub direct: String,
}

pub fn sigma_table(spec: &ParamSpec) -> Vec<TableRow> {
    let n2 = 2 * spec.n as i64;
    let mut rows = Vec::new();
    for k in 1..=n2 {
        for m in k..=n2 {
            rows.push(TableRow {
                k,
                m,
                i: None,
                closed: crate::params::format_scalar(&sigma_closed(spec, k, m).unwrap()),
                direct: crate::params::format_scalar(&sigma_direct(spec, k, m)),
            });
        }
    }
    rows
}

pub fn mu_table(spec: &ParamSpec) -> Vec<TableRow> {
    let n2 = 2 * spec.n as i64;
    let mut rows = Vec::new();
    for k in 1..=n2 {
        for m in k + 1..=n2 {
            for i in k..m {
                rows.push(TableRow {
                    k,
                    m,
                    i: Some(i),
                    closed: crate::params::format_scalar(&mu_closed(spec, k, m, i).unwrap()),
                    direct: crate::params::format_scalar(&mu_direct(spec, k, m, i)),
                });
            }
        }
    }
    rows
}

/// h_{k→m} = g_{k→m} f_{k→m} with folded indices.
pub fn h_interval(n: usize, k: i64, m: i64) -> GroupElement {
    GroupElement::h_range(n, k, m)
}

/// The single-term element h·1.
pub fn group_elem(h: GroupElement) -> Element {
    Element::group(h)
}

/// Word coefficient of u(k,m) in u[k,m].
pub fn leading_coefficient(g: &Generators, k: i64, m: i64) -> Result<Scalar> {
    let n = g.n();
    let w: Word = u_letters(n, k, m).iter().map(|&i| (i - 1) as u8).collect();
    let t = MixedTerm {
        neg: Word::new(),
        grp: GroupElement::identity(n),
        pos: w,
    };
    Ok(g.u(k, m, Sign::Positive)?.coeff(&t))
}

/// Folded degree of u(k,m) as a plain vector (for Σ-monoid queries).
pub fn root_degree(n: usize, k: i64, m: i64) -> Vec<u32> {
    interval_counts(n, k, m).into_iter().map(|c| c as u32).collect()
}

/// Constitution of the positive word of each term, for grouping.
pub fn pos_counts(n: usize, t: &MixedTerm) -> Vec<i64> {
    counts(n, &t.pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::{Quotient, DEFAULT_MAX_DEGREE};
    use crate::freealg::bracket;
    use crate::params::{frac, int, make_spec, FreeChoices};

    fn spec2() -> ParamSpec {
        let mut free = FreeChoices::new();
        free.insert((1, 2), int(3));
        make_spec(2, int(2), &free, None).unwrap()
    }

    fn set(v: &[i64]) -> BTreeSet<i64> {
        v.iter().copied().collect()
    }

    #[test]
    fn u_examples() {
        let s = spec2();
        let g = Generators::new(&s);
        assert_eq!(g.u(1, 1, Sign::Positive).unwrap(), Element::x(2, 1));
        let want = multiply(&s, &Element::x(2, 1), &Element::x(2, 2))
            .sub(&multiply(&s, &Element::x(2, 2), &Element::x(2, 1)).scale(&int(3)));
        assert_eq!(g.u(1, 2, Sign::Positive).unwrap(), want);
        // m = ψ(k): β = −p(u(3,4),u(1,2))⁻¹ = −q⁻¹
        assert_eq!(pword(&s, 3, 4, 1, 2), int(2));
        let u34 = g.u(3, 4, Sign::Positive).unwrap();
        let u12 = g.u(1, 2, Sign::Positive).unwrap();
        let want = bracket(&s, &u34, &u12).unwrap().scale(&frac(-1, 2));
        assert_eq!(g.u(1, 4, Sign::Positive).unwrap(), want);
        assert!(g.u(0, 1, Sign::Positive).is_err());
        assert!(g.u(2, 5, Sign::Positive).is_err());
    }

    #[test]
    fn leading_coefficients() {
        for s in ParamSpec::defaults(3) {
            let g = Generators::new(&s);
            for k in 1..=6 {
                for m in k..=6 {
                    let c = leading_coefficient(&g, k, m).unwrap();
                    if k == 3 && m == 4 {
                        // u[n,n+1] = β[x_n,x_n] = (1 − q⁻¹)x_n²
                        assert_eq!(c, int(1) - s.q.recip());
                    } else if m == psi(3, k) {
                        assert!(!c.is_zero(), "u[{k},{m}]");
                    } else {
                        assert_eq!(c, int(1), "u[{k},{m}]");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let s = spec2();
        let g = Generators::new(&s);
        assert_eq!(
            g.phi(1, 3, &set(&[]), Sign::Positive).unwrap(),
            g.u(1, 3, Sign::Positive).unwrap()
        );
        let phi = g.phi(1, 2, &set(&[1]), Sign::Positive).unwrap();
        let c = (int(1) - frac(1, 4)) * s.p[1][0].recip();
        let want = g
            .u(1, 2, Sign::Positive)
            .unwrap()
            .sub(&multiply(&s, &Element::x(2, 2), &Element::x(2, 1)).scale(&c));
        assert_eq!(phi, want);
        assert_eq!(tau(&s, 2), int(2));
        assert_eq!(tau(&s, 1), int(1));
        assert_eq!(tau(&s, 3), int(1));
        let neg = g.phi(1, 2, &set(&[1]), Sign::Negative).unwrap();
        let gm = Generators::new(&s.mirrored());
        assert_eq!(neg, gm.phi(1, 2, &set(&[1]), Sign::Positive).unwrap().flip_sign());
        assert_ne!(neg, phi.flip_sign());
    }

    #[test]
    fn dual_pairs_close_up() {
        let s = spec2();
        let g = Generators::new(&s);
        let q = Quotient::new(&s, DEFAULT_MAX_DEGREE);
        for (k, m) in [(1, 2), (1, 3), (2, 4), (3, 4)] {
            let a = g.u(k, m, Sign::Positive).unwrap();
            let b = g.u(psi(2, m), psi(2, k), Sign::Negative).unwrap();
            let lhs = q.nf(&bracket(&s, &a, &b).unwrap()).unwrap();
            let rhs = Element::one(2).sub(&Element::group(h_interval(2, k, m)));
            assert!(crate::borel::proportionality(&lhs, &rhs).is_some(), "({k},{m})");
        }
    }

    #[test]
    fn sigma_mu_examples() {
        let s = spec2();
        assert_eq!(sigma_closed(&s, 1, 2).unwrap(), int(2));
        assert_eq!(sigma_direct(&s, 1, 2), int(2));
        assert_eq!(sigma_closed(&s, 1, 4).unwrap(), int(16));
        assert_eq!(mu_closed(&s, 1, 3, 2).unwrap(), int(1));
        assert_eq!(mu_closed(&s, 1, 3, 1).unwrap(), frac(1, 16));
        assert_eq!(mu_direct(&s, 1, 3, 1), frac(1, 16));
        assert!(mu_closed(&s, 1, 3, 3).is_err());
    }

    #[test]
    fn sigma_mu_tables_agree() {
        for n in 2..=4 {
            for s in ParamSpec::defaults(n) {
                for r in sigma_table(&s).into_iter().chain(mu_table(&s)) {
                    assert_eq!(r.closed, r.direct, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn mirror_examples() {
        let s = spec2();
        assert_eq!(mirror(&s, &Element::x(2, 1)), Element::xm(2, 1).scale(&frac(1, 4)));
        assert_eq!(mirror(&s, &Element::xm(2, 1)), Element::x(2, 1).neg());
        let q = Quotient::new(&s, DEFAULT_MAX_DEGREE);
        let x = |i| Element::x(2, i);
        let rel = bracket(&s, &x(1), &bracket(&s, &x(1), &x(2)).unwrap()).unwrap();
        assert!(q.is_zero(&mirror(&s, &rel)).unwrap());
        for r in q.pres.positive_elements() {
            assert!(q.is_zero(&mirror(&s, &r)).unwrap());
        }
        for r in q.pres.negative_elements() {
            assert!(q.is_zero(&mirror(&s, &r)).unwrap());
        }
        // acts on normal-ordered terms, so mixed products are not preserved
        let c = bracket(&s, &x(1), &Element::xm(2, 1)).unwrap();
        assert_eq!(mirror(&s, &c), c);
        let prod = multiply(&s, &x(1), &Element::xm(2, 1));
        let y = mirror(&s, &x(1));
        let ym = mirror(&s, &Element::xm(2, 1));
        assert_ne!(mirror(&s, &prod), multiply(&s, &y, &ym));
    }
}
