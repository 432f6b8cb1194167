//! Quantification data for U_q(so_{2n+1}): rank, q, the matrix p_ij and the
//! bimultiplicative form built from it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::freealg::GroupElement;
use crate::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Always `num/den`, also for integers.
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `a`, `a/b` and `-a/b`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// x^e for a possibly negative exponent (x must be nonzero when e < 0).
pub fn spow(x: &Scalar, e: i64) -> Scalar {
    match e.cmp(&0) {
        Ordering::Equal => Scalar::one(),
        Ordering::Greater => Pow::pow(x, e as u64),
        Ordering::Less => Pow::pow(x.recip(), (-e) as u64),
    }
}

/// ψ(i) = 2n − i + 1.
pub fn psi(n: usize, i: i64) -> i64 {
    2 * n as i64 - i + 1
}

/// Index in 1..=2n folded to the letter index in 1..=n.
pub fn fold(n: usize, i: i64) -> usize {
    if i as usize > n {
        psi(n, i) as usize
    } else {
        i as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSpec {
    pub n: usize,
    pub q: Scalar,
    /// p[i][j] = χ^i(g_j), zero-based.
    pub p: Vec<Vec<Scalar>>,
}

/// Free entries p_ij (i < j, one-based) keyed by (i, j).
pub type FreeChoices = BTreeMap<(usize, usize), Scalar>;

fn check_q(q: &Scalar) -> Result<()> {
    let one = Scalar::one();
    let q2 = q * q;
    let bad = |why: &str| Err(Error::InvalidParameter(format!("q = {q} ({why})")));
    if q.is_zero() {
        return bad("q = 0");
    }
    if q.abs() == one {
        return bad("q = ±1");
    }
    if q2 == -one.clone() {
        return bad("q² = −1");
    }
    if &q2 * q == one {
        return bad("q³ = 1");
    }
    if &q2 * &q2 == one {
        return bad("q⁴ = 1");
    }
    Ok(())
}

/// Pool of small distinct rationals used for unset free entries.
fn free_pool() -> Vec<Scalar> {
    let mut out = Vec::new();
    for num in 1..=7i64 {
        for den in 1..=5i64 {
            if num_integer::gcd(num, den) != 1 || (num == 1 && den == 1) {
                continue;
            }
            out.push(frac(num, den));
            out.push(frac(-num, den));
        }
    }
    out
}

pub fn make_spec(n: usize, q: Scalar, free: &FreeChoices, seed: Option<u64>) -> Result<ParamSpec> {
    if n == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    check_q(&q)?;
    for (&(i, j), v) in free {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::InvalidParameter(format!("p_{i}{j} is not a free entry")));
        }
        if v.is_zero() {
            return Err(Error::InvalidParameter(format!("p_{i}{j} = 0")));
        }
    }
    let mut pool = free_pool();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed.unwrap_or(1)));
    let mut pool = pool.into_iter();
    let q2 = &q * &q;
    let mut p = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        p[i][i] = if i + 1 == n { q.clone() } else { q2.clone() };
        for j in i + 1..n {
            let v = match free.get(&(i + 1, j + 1)) {
                Some(v) => v.clone(),
                None => pool.next().expect("free pool exhausted"),
            };
            let prod = if j == i + 1 { q2.recip() } else { Scalar::one() };
            p[j][i] = prod / &v;
            p[i][j] = v;
        }
    }
    let spec = ParamSpec { n, q, p };
    spec.check()?;
    Ok(spec)
}

impl ParamSpec {
    /// Default specializations used by the verification suites.
    pub fn defaults(n: usize) -> Vec<ParamSpec> {
        [(frac(2, 1), 1u64), (frac(-3, 1), 2), (frac(3, 2), 3)]
            .into_iter()
            .map(|(q, seed)| make_spec(n, q, &FreeChoices::new(), Some(seed)).expect("valid default"))
            .collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.p[i - 1][j - 1]
    }

    pub fn free_choices(&self) -> FreeChoices {
        let mut out = FreeChoices::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.insert((i + 1, j + 1), self.p[i][j].clone());
            }
        }
        out
    }

    /// Re-checks every type-B constraint.
    pub fn check(&self) -> Result<()> {
        check_q(&self.q)?;
        let n = self.n;
        if self.p.len() != n || self.p.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("p must be n×n".into()));
        }
        let q2 = &self.q * &self.q;
        let fail = |what: String| Err(Error::InvalidParameter(what));
        for i in 0..n {
            let want = if i + 1 == n { &self.q } else { &q2 };
            if &self.p[i][i] != want {
                return fail(format!("p_{0}{0} must be {want}", i + 1));
            }
            for j in 0..n {
                if self.p[i][j].is_zero() {
                    return fail(format!("p_{}{} = 0", i + 1, j + 1));
                }
                if j > i {
                    let prod = &self.p[i][j] * &self.p[j][i];
                    let want = if j == i + 1 { q2.recip() } else { Scalar::one() };
                    if prod != want {
                        return fail(format!("p_{0}{1}·p_{1}{0} must be {want}", i + 1, j + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parameters seen by the negative generators: p'_ij = p_ji⁻¹, q' = q⁻¹.
    /// The map x_i⁻ ↦ x_i identifies the negative Borel half with the positive
    /// half of this spec.
    pub fn mirrored(&self) -> ParamSpec {
        let n = self.n;
        let p = (0..n)
            .map(|i| (0..n).map(|j| self.p[j][i].recip()).collect())
            .collect();
        ParamSpec { n, q: self.q.recip(), p }
    }

    /// χ^w(h) for a word of folded degree `c` (letter counts, negative letters
    /// counted negatively).
    pub fn chi(&self, c: &[i64], h: &GroupElement) -> Scalar {
        let n = self.n;
        let mut acc = Scalar::one();
        for a in 0..n {
            for b in 0..n {
                // χ^{x_a}(g_b) = p_ab, χ^{x_a}(f_b) = p_ba.
                let e = c[a] * h.g_exp(b) as i64 + c[b] * h.f_exp(a) as i64;
                if e != 0 {
                    acc *= spow(&self.p[a][b], e);
                }
            }
        }
        acc
    }

    pub fn chi_deg(&self, wdeg: &Degree, h: &GroupElement) -> Scalar {
        self.chi(&wdeg.folded, h)
    }

    /// p(a, b) = χ^a(gr(b)).
    pub fn pform(&self, a: &Degree, b: &Degree) -> Scalar {
        self.chi(&a.folded, &b.group_degree())
    }

    /// p(u, v) for positive words given by letter counts.
    pub fn pform_counts(&self, a: &[i64], b: &[i64]) -> Scalar {
        let mut acc = Scalar::one();
        for i in 0..self.n {
            for j in 0..self.n {
                let e = a[i] * b[j];
                if e != 0 {
                    acc *= spow(&self.p[i][j], e);
                }
            }
        }
        acc
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} q={} p=[", self.n, self.q)?;
        for (i, row) in self.p.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    n: usize,
    q: String,
    p: Vec<Vec<String>>,
}

impl ParamSpec {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SpecJson {
            n: self.n,
            q: format_scalar(&self.q),
            p: self
                .p
                .iter()
                .map(|r| r.iter().map(format_scalar).collect())
                .collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ParamSpec> {
        let raw: SpecJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let p = raw
            .p
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let spec = ParamSpec {
            n: raw.n,
            q: parse_scalar(&raw.q)?,
            p,
        };
        spec.check()?;
        Ok(spec)
    }
}

/// Γ⁺⊕Γ⁻ degree: letter counts of positive and negative letters (indices
/// above n already folded) and the folded Γ image pos − neg.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Degree {
    pub pos: Vec<u32>,
    pub neg: Vec<u32>,
    pub folded: Vec<i64>,
}

impl Degree {
    pub fn zero(n: usize) -> Self {
        Degree {
            pos: vec![0; n],
            neg: vec![0; n],
            folded: vec![0; n],
        }
    }

    pub fn new(pos: Vec<u32>, neg: Vec<u32>) -> Self {
        let folded = pos
            .iter()
            .zip(&neg)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect();
        Degree { pos, neg, folded }
    }

    /// Degree of a pair of zero-based words (negative, positive).
    pub fn of_words(n: usize, neg: &[u8], pos: &[u8]) -> Self {
        let mut p = vec![0; n];
        let mut m = vec![0; n];
        for &a in pos {
            p[a as usize] += 1;
        }
        for &a in neg {
            m[a as usize] += 1;
        }
        Degree::new(p, m)
    }

    /// Positive degree of x_{k} x_{k+1} ... x_{m} (indices 1..=2n, folded).
    pub fn interval(n: usize, k: i64, m: i64) -> Self {
        let mut p = vec![0; n];
        for t in k..=m {
            p[fold(n, t) - 1] += 1;
        }
        Degree::new(p, vec![0; n])
    }

    pub fn negated(&self) -> Self {
        Degree::new(self.neg.clone(), self.pos.clone())
    }

    pub fn add(&self, o: &Degree) -> Self {
        Degree::new(
            self.pos.iter().zip(&o.pos).map(|(a, b)| a + b).collect(),
            self.neg.iter().zip(&o.neg).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.pos.iter().chain(&self.neg).all(|&c| c == 0)
    }

    /// gr: x_i ↦ g_i, x_i⁻ ↦ f_i.
    pub fn group_degree(&self) -> GroupElement {
        let mut e: Vec<i32> = self.pos.iter().map(|&c| c as i32).collect();
        e.extend(self.neg.iter().map(|&c| c as i32));
        GroupElement::from_exponents(e)
    }
}

/// The (ord) order: x_1 > … > x_n > x_1⁻ > … > x_n⁻, first difference decides.
impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pos.cmp(&other.pos).then_with(|| self.neg.cmp(&other.neg))
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec2() -> ParamSpec {
        let mut free = FreeChoices::new();
        free.insert((1, 2), int(3));
        make_spec(2, int(2), &free, None).unwrap()
    }

    #[test]
    fn solves_dependent_entries() {
        let s = spec2();
        assert_eq!(s.p, vec![vec![int(4), int(3)], vec![frac(1, 12), int(2)]]);
        let s1 = make_spec(1, int(2), &FreeChoices::new(), None).unwrap();
        assert_eq!(s1.p, vec![vec![int(2)]]);
    }

    #[test]
    fn rejects_forbidden_parameters() {
        for q in [int(1), int(-1), int(0)] {
            assert!(make_spec(2, q, &FreeChoices::new(), None).is_err());
        }
        let mut free = FreeChoices::new();
        free.insert((1, 2), int(0));
        assert!(make_spec(2, int(2), &free, None).is_err());
    }

    #[test]
    fn characters_follow_the_matrix() {
        let s = spec2();
        let n = 2;
        let x1 = Degree::of_words(n, &[], &[0]);
        let x1m = Degree::of_words(n, &[0], &[]);
        assert_eq!(s.chi_deg(&x1, &GroupElement::g(n, 2)), int(3));
        assert_eq!(s.chi_deg(&x1m, &GroupElement::f(n, 2)), int(12));
        let x1x2 = Degree::of_words(n, &[], &[0, 1]);
        let h1 = GroupElement::h(n, 1);
        // p11·p21·p11·p12
        assert_eq!(s.chi_deg(&x1x2, &h1), int(4) * frac(1, 12) * int(4) * int(3));
    }

    #[test]
    fn pform_examples() {
        let s = spec2();
        let n = 2;
        let x1 = Degree::of_words(n, &[], &[0]);
        let x2 = Degree::of_words(n, &[], &[1]);
        assert_eq!(s.pform(&x1, &x2), int(3));
        let w = Degree::of_words(n, &[], &[1, 0]);
        assert_eq!(s.pform(&w, &w), int(2));
        let x2m = Degree::of_words(n, &[1], &[]);
        assert_eq!(s.pform(&x1, &x2m) * s.pform(&x2m, &x1), int(1));
    }

    #[test]
    fn degree_order() {
        let n = 2;
        let x1 = Degree::of_words(n, &[], &[0]);
        let x2 = Degree::of_words(n, &[], &[1]);
        let x1m = Degree::of_words(n, &[0], &[]);
        assert!(x1 > x2 && x2 > x1m);
    }

    #[test]
    fn json_round_trip() {
        let s = spec2();
        let back = ParamSpec::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
        assert_eq!(s.to_json()["q"], "2/1");
    }

    #[test]
    fn mirrored_is_type_b_with_inverse_q() {
        for s in ParamSpec::defaults(3) {
            let m = s.mirrored();
            m.check().unwrap();
            assert_eq!(m.mirrored(), s);
        }
    }

    proptest! {
        #[test]
        fn generated_specs_are_valid(n in 1usize..5, seed in 0u64..500, qn in 2i64..6, qd in 1i64..4) {
            let q = frac(qn, qd);
            prop_assume!(q != int(1));
            let s = make_spec(n, q, &FreeChoices::new(), Some(seed)).unwrap();
            prop_assert!(s.check().is_ok());
        }

        #[test]
        fn pform_is_bimultiplicative(a in proptest::collection::vec(-2i64..3, 3),
                                     b in proptest::collection::vec(-2i64..3, 3),
                                     c in proptest::collection::vec(-2i64..3, 3)) {
            let s = &ParamSpec::defaults(3)[1];
            let deg = |v: &Vec<i64>| {
                let pos = v.iter().map(|&x| x.max(0) as u32).collect();
                let neg = v.iter().map(|&x| (-x).max(0) as u32).collect();
                Degree::new(pos, neg)
            };
            let (da, db, dc) = (deg(&a), deg(&b), deg(&c));
            prop_assert_eq!(s.pform(&da, &db.add(&dc)), s.pform(&da, &db) * s.pform(&da, &dc));
            prop_assert_eq!(s.pform(&da.add(&db), &dc), s.pform(&da, &dc) * s.pform(&db, &dc));
        }
    }
}
