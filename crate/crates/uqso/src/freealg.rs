//! The mixed algebra generated by x_i, x_i⁻ and the group H = G × F, subject
//! only to [x_i, x_j⁻] = δ_ij(1 − g_i f_i) and the group commutation rules.
//!
//! Every element is kept in triangular normal form: a sum of terms
//! (negative word) · (group element) · (positive word).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::params::{format_scalar, parse_scalar, Degree, ParamSpec, Scalar};
use crate::{Error, Result};

/// Zero-based letter indices.
pub type Word = SmallVec<[u8; 8]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

pub fn counts(n: usize, w: &[u8]) -> Vec<i64> {
    let mut c = vec![0; n];
    for &a in w {
        c[a as usize] += 1;
    }
    c
}

/// Exponent vector over (g_1..g_n, f_1..f_n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    e: SmallVec<[i32; 8]>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            e: SmallVec::from_elem(0, 2 * n),
        }
    }

    pub fn from_exponents(e: Vec<i32>) -> Self {
        assert!(e.len().is_multiple_of(2), "exponent vector must have even length");
        GroupElement { e: e.into() }
    }

    pub fn exponents(&self) -> &[i32] {
        &self.e
    }

    pub fn n(&self) -> usize {
        self.e.len() / 2
    }

    /// g_i, one-based.
    pub fn g(n: usize, i: usize) -> Self {
        let mut x = Self::identity(n);
        x.e[i - 1] = 1;
        x
    }

    pub fn f(n: usize, i: usize) -> Self {
        let mut x = Self::identity(n);
        x.e[n + i - 1] = 1;
        x
    }

    /// h_i = g_i f_i.
    pub fn h(n: usize, i: usize) -> Self {
        Self::g(n, i).mul(&Self::f(n, i))
    }

    fn range(n: usize, k: i64, m: i64, g: bool, f: bool) -> Self {
        let mut x = Self::identity(n);
        for t in k..=m {
            let a = crate::params::fold(n, t) - 1;
            if g {
                x.e[a] += 1;
            }
            if f {
                x.e[n + a] += 1;
            }
        }
        x
    }

    /// g_{k→m} = g_k g_{k+1} ⋯ g_m with indices folded.
    pub fn g_range(n: usize, k: i64, m: i64) -> Self {
        Self::range(n, k, m, true, false)
    }

    pub fn f_range(n: usize, k: i64, m: i64) -> Self {
        Self::range(n, k, m, false, true)
    }

    pub fn h_range(n: usize, k: i64, m: i64) -> Self {
        Self::range(n, k, m, true, true)
    }

    /// Zero-based accessors.
    pub fn g_exp(&self, b: usize) -> i32 {
        self.e[b]
    }

    pub fn f_exp(&self, b: usize) -> i32 {
        self.e[self.n() + b]
    }

    pub fn is_identity(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        GroupElement {
            e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inv(&self) -> Self {
        GroupElement {
            e: self.e.iter().map(|a| -a).collect(),
        }
    }

    /// Group degree of a letter: g_a for x_a, f_a for x_a⁻ (zero-based a).
    fn letter(n: usize, a: u8, sign: Sign) -> Self {
        match sign {
            Sign::Positive => Self::g(n, a as usize + 1),
            Sign::Negative => Self::f(n, a as usize + 1),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut parts = Vec::new();
        for (idx, &x) in self.e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (c, i) = if idx < n { ('g', idx + 1) } else { ('f', idx - n + 1) };
            if x == 1 {
                parts.push(format!("{c}{i}"));
            } else {
                parts.push(format!("{c}{i}^{x}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A triangular term x⁻_{neg} · grp · x_{pos}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedTerm {
    pub neg: Word,
    pub grp: GroupElement,
    pub pos: Word,
}

impl MixedTerm {
    pub fn unit(n: usize) -> Self {
        MixedTerm {
            neg: Word::new(),
            grp: GroupElement::identity(n),
            pos: Word::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.grp.n()
    }

    pub fn degree(&self) -> Degree {
        Degree::of_words(self.n(), &self.neg, &self.pos)
    }

    pub fn folded(&self) -> Vec<i64> {
        let n = self.n();
        let mut c = counts(n, &self.pos);
        for &a in &self.neg {
            c[a as usize] -= 1;
        }
        c
    }

    /// grp · gr(neg) · gr(pos).
    pub fn h_degree(&self) -> GroupElement {
        let n = self.n();
        let mut e: SmallVec<[i32; 8]> = self.grp.e.clone();
        for &a in &self.pos {
            e[a as usize] += 1;
        }
        for &a in &self.neg {
            e[n + a as usize] += 1;
        }
        GroupElement { e }
    }

    pub fn is_unit(&self) -> bool {
        self.neg.is_empty() && self.pos.is_empty() && self.grp.is_identity()
    }
}

impl fmt::Display for MixedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.neg.iter().map(|a| format!("x{}-", a + 1)).collect();
        if !self.grp.is_identity() {
            parts.push(self.grp.to_string());
        }
        parts.extend(self.pos.iter().map(|a| format!("x{}", a + 1)));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<MixedTerm, Scalar>,
}

type Acc = HashMap<MixedTerm, Scalar>;

fn acc_add(acc: &mut Acc, t: MixedTerm, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&t) {
        Some(v) => *v += c,
        None => {
            acc.insert(t, c);
        }
    }
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(MixedTerm::unit(n), Scalar::one())
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::monomial(MixedTerm::unit(n), c)
    }

    pub fn monomial(t: MixedTerm, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(t, c);
        }
        Element { terms }
    }

    pub fn group(h: GroupElement) -> Self {
        Self::monomial(
            MixedTerm {
                neg: Word::new(),
                grp: h,
                pos: Word::new(),
            },
            Scalar::one(),
        )
    }

    /// A single word; `letters` are one-based and already folded into 1..=n.
    pub fn word(n: usize, sign: Sign, letters: &[usize]) -> Self {
        let w: Word = letters.iter().map(|&i| (i - 1) as u8).collect();
        let mut t = MixedTerm::unit(n);
        match sign {
            Sign::Positive => t.pos = w,
            Sign::Negative => t.neg = w,
        }
        Self::monomial(t, Scalar::one())
    }

    /// x_i, one-based.
    pub fn x(n: usize, i: usize) -> Self {
        Self::word(n, Sign::Positive, &[i])
    }

    /// x_i⁻, one-based.
    pub fn xm(n: usize, i: usize) -> Self {
        Self::word(n, Sign::Negative, &[i])
    }

    /// Pure-sign element from a polynomial on zero-based words.
    pub fn from_poly(n: usize, sign: Sign, poly: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut acc = Acc::new();
        for (w, c) in poly {
            let mut t = MixedTerm::unit(n);
            match sign {
                Sign::Positive => t.pos = w,
                Sign::Negative => t.neg = w,
            }
            acc_add(&mut acc, t, c);
        }
        Self::from_acc(acc)
    }

    fn from_acc(acc: Acc) -> Self {
        Element {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (MixedTerm, Scalar)>) -> Self {
        let mut acc = Acc::new();
        for (t, c) in it {
            acc_add(&mut acc, t, c);
        }
        Self::from_acc(acc)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixedTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &MixedTerm) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut terms = self.terms.clone();
        for (t, c) in &o.terms {
            let e = terms.entry(t.clone()).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(t);
            }
        }
        Element { terms }
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
    }

    pub fn map_terms(&self, f: impl Fn(&MixedTerm, &Scalar) -> Option<(MixedTerm, Scalar)>) -> Element {
        Element::from_terms(self.terms.iter().filter_map(|(t, c)| f(t, c)))
    }

    /// Folded Γ-degree shared by all terms, if any.
    pub fn homogeneous_folded(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|t| t.folded());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// H-degree shared by all terms, if any.
    pub fn homogeneous_h(&self) -> Option<GroupElement> {
        let mut it = self.terms.keys().map(|t| t.h_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Γ⁺⊕Γ⁻ degree shared by all terms, if any.
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        let mut it = self.terms.keys().map(|t| t.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Which sign, if every term is pure with trivial group part.
    pub fn pure_sign(&self) -> Option<Sign> {
        let all = |s: Sign| {
            self.terms.keys().all(|t| {
                t.grp.is_identity()
                    && match s {
                        Sign::Positive => t.neg.is_empty(),
                        Sign::Negative => t.pos.is_empty(),
                    }
            })
        };
        if all(Sign::Positive) {
            Some(Sign::Positive)
        } else if all(Sign::Negative) {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// Word → coefficient view of a pure-sign element.
    pub fn poly(&self, sign: Sign) -> Result<BTreeMap<Word, Scalar>> {
        let mut out = BTreeMap::new();
        for (t, c) in &self.terms {
            let ok = t.grp.is_identity()
                && match sign {
                    Sign::Positive => t.neg.is_empty(),
                    Sign::Negative => t.pos.is_empty(),
                };
            if !ok {
                return Err(Error::MixedSign {
                    expected: match sign {
                        Sign::Positive => "positive",
                        Sign::Negative => "negative",
                    },
                });
            }
            let w = match sign {
                Sign::Positive => t.pos.clone(),
                Sign::Negative => t.neg.clone(),
            };
            out.insert(w, c.clone());
        }
        Ok(out)
    }

    /// Replaces x_i by x_i⁻ in a pure positive element (or back).
    pub fn flip_sign(&self) -> Element {
        self.map_terms(|t, c| {
            Some((
                MixedTerm {
                    neg: t.pos.clone(),
                    grp: t.grp.clone(),
                    pos: t.neg.clone(),
                },
                c.clone(),
            ))
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (t, c)) in self.terms.iter().enumerate() {
            let unit = t.neg.is_empty() && t.pos.is_empty() && t.grp.is_identity();
            let (sign, mag) = if c < &Scalar::zero() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if unit {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{mag} {t}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    g: Vec<i32>,
    f: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    neg: Vec<usize>,
    grp: GroupJson,
    pos: Vec<usize>,
}

impl Element {
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let n = t.n();
                TermJson {
                    coeff: format_scalar(c),
                    neg: t.neg.iter().map(|&a| a as usize + 1).collect(),
                    grp: GroupJson {
                        g: t.grp.e[..n].to_vec(),
                        f: t.grp.e[n..].to_vec(),
                    },
                    pos: t.pos.iter().map(|&a| a as usize + 1).collect(),
                }
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }

    pub fn from_json(n: usize, v: &serde_json::Value) -> Result<Element> {
        let rows: Vec<TermJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Vec::new();
        for r in rows {
            if r.grp.g.len() != n || r.grp.f.len() != n {
                return Err(Error::Parse(format!("group part must have {n} g and {n} f exponents")));
            }
            let letter = |i: usize| {
                if (1..=n).contains(&i) {
                    Ok((i - 1) as u8)
                } else {
                    Err(Error::Index(format!("letter {i} outside 1..={n}")))
                }
            };
            let mut e = r.grp.g.clone();
            e.extend(&r.grp.f);
            out.push((
                MixedTerm {
                    neg: r.neg.iter().map(|&i| letter(i)).collect::<Result<_>>()?,
                    grp: GroupElement::from_exponents(e),
                    pos: r.pos.iter().map(|&i| letter(i)).collect::<Result<_>>()?,
                },
                parse_scalar(&r.coeff)?,
            ));
        }
        Ok(Element::from_terms(out))
    }
}

type Piece = (Word, GroupElement, Word, Scalar);

/// Moves positive words past negative words, memoizing sub-problems.
struct Straightener<'a> {
    spec: &'a ParamSpec,
    memo: HashMap<(Word, Word), Rc<Vec<Piece>>>,
}

impl<'a> Straightener<'a> {
    fn new(spec: &'a ParamSpec) -> Self {
        Straightener {
            spec,
            memo: HashMap::new(),
        }
    }

    fn chi_word(&self, w: &[u8], h: &GroupElement) -> Scalar {
        if h.is_identity() || w.is_empty() {
            return Scalar::one();
        }
        self.spec.chi(&counts(self.spec.n, w), h)
    }

    /// a · b⁻ for a positive word a and negative word b, in normal form.
    fn straighten(&mut self, a: &[u8], b: &[u8]) -> Rc<Vec<Piece>> {
        let n = self.spec.n;
        if a.is_empty() || b.is_empty() {
            return Rc::new(vec![(b.into(), GroupElement::identity(n), a.into(), Scalar::one())]);
        }
        let key = (Word::from(a), Word::from(b));
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let i = *a.last().unwrap();
        let head = &a[..a.len() - 1];
        // x_i · b⁻ first.
        let hi = GroupElement::h(n, i as usize + 1);
        let mut cross: Vec<Piece> = Vec::new();
        let mut pref = Scalar::one();
        for t in 0..b.len() {
            if b[t] == i {
                let mut rest = Word::from(&b[..t]);
                rest.extend_from_slice(&b[t + 1..]);
                let tail = self.chi_word(&b[t + 1..], &hi);
                cross.push((rest.clone(), GroupElement::identity(n), Word::new(), pref.clone()));
                cross.push((rest, hi.clone(), Word::new(), -(&pref * tail)));
            }
            pref *= &self.spec.p[b[t] as usize][i as usize];
        }
        cross.push((b.into(), GroupElement::identity(n), [i].into_iter().collect(), pref));
        let mut acc: HashMap<(Word, GroupElement, Word), Scalar> = HashMap::new();
        for (cn, k, cp, gamma) in cross {
            let sub = self.straighten(head, &cn);
            for (dn, k2, dp, delta) in sub.iter() {
                let c = &gamma * delta * self.chi_word(dp, &k);
                if c.is_zero() {
                    continue;
                }
                let mut w = dp.clone();
                w.extend_from_slice(&cp);
                *acc.entry((dn.clone(), k2.mul(&k), w)).or_insert_with(Scalar::zero) += c;
            }
        }
        let out: Vec<Piece> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b, c), x)| (a, b, c, x))
            .collect();
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    fn mul_terms(&mut self, ta: &MixedTerm, tb: &MixedTerm, c: &Scalar, acc: &mut Acc) {
        let pieces = self.straighten(&ta.pos, &tb.neg);
        for (cn, k, cp, gamma) in pieces.iter() {
            // a⁻ g c⁻ k c h b = χ^c(g) χ^c(h) a⁻c⁻ (g k h) c b, the first
            // factor read with c⁻ as a positive word.
            let coeff = c * gamma * self.chi_word(cn, &ta.grp) * self.chi_word(cp, &tb.grp);
            let mut neg = ta.neg.clone();
            neg.extend_from_slice(cn);
            let mut pos = cp.clone();
            pos.extend_from_slice(&tb.pos);
            acc_add(
                acc,
                MixedTerm {
                    neg,
                    grp: ta.grp.mul(k).mul(&tb.grp),
                    pos,
                },
                coeff,
            );
        }
    }
}

pub fn multiply(spec: &ParamSpec, a: &Element, b: &Element) -> Element {
    let mut st = Straightener::new(spec);
    let mut acc = Acc::new();
    for (ta, ca) in &a.terms {
        for (tb, cb) in &b.terms {
            st.mul_terms(ta, tb, &(ca * cb), &mut acc);
        }
    }
    Element::from_acc(acc)
}

pub fn product(spec: &ParamSpec, factors: &[&Element]) -> Element {
    let n = spec.n;
    factors
        .iter()
        .fold(Element::one(n), |acc, f| multiply(spec, &acc, f))
}

/// uv − c·vu.
pub fn skew(spec: &ParamSpec, u: &Element, v: &Element, c: &Scalar) -> Element {
    multiply(spec, u, v).sub(&multiply(spec, v, u).scale(c))
}

/// [u, v] = uv − χ^u(g_v)·vu. The left factor must be Γ-homogeneous and the
/// right factor H-homogeneous.
pub fn bracket(spec: &ParamSpec, u: &Element, v: &Element) -> Result<Element> {
    if u.is_zero() || v.is_zero() {
        return Ok(Element::zero());
    }
    let cu = u.homogeneous_folded().ok_or_else(|| Error::Homogeneity {
        side: "left",
        reason: "terms carry different characters".into(),
    })?;
    let hv = v.homogeneous_h().ok_or_else(|| Error::Homogeneity {
        side: "right",
        reason: "terms have different group degrees".into(),
    })?;
    Ok(skew(spec, u, v, &spec.chi(&cu, &hv)))
}

/// An element together with the nominal degrees it has in the free algebra.
///
/// Identities such as the Jacobi forms are stated for homogeneous elements of
/// the free algebra; after straightening, the relation
/// [x_i, x_i⁻] = 1 − g_i f_i can break H-homogeneity of the normal form while
/// the nominal degree is still well defined. Brackets here use the nominal
/// degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graded {
    pub elem: Element,
    pub fdeg: Vec<i64>,
    pub hdeg: GroupElement,
}

impl Graded {
    /// Requires the element to be homogeneous in both gradings.
    pub fn new(elem: Element) -> Result<Graded> {
        let fdeg = elem.homogeneous_folded().ok_or(Error::Homogeneity {
            side: "left",
            reason: "not Γ-homogeneous".into(),
        })?;
        let hdeg = elem.homogeneous_h().ok_or(Error::Homogeneity {
            side: "right",
            reason: "not H-homogeneous".into(),
        })?;
        Ok(Graded { elem, fdeg, hdeg })
    }

    pub fn with_degrees(elem: Element, fdeg: Vec<i64>, hdeg: GroupElement) -> Graded {
        Graded { elem, fdeg, hdeg }
    }

    pub fn x(n: usize, i: usize) -> Graded {
        Graded::new(Element::x(n, i)).unwrap()
    }

    pub fn xm(n: usize, i: usize) -> Graded {
        Graded::new(Element::xm(n, i)).unwrap()
    }

    pub fn group(h: GroupElement) -> Graded {
        Graded::new(Element::group(h)).unwrap()
    }

    pub fn one(n: usize) -> Graded {
        Graded::group(GroupElement::identity(n))
    }

    /// p(self, other) = χ^self(g_other).
    pub fn p(&self, spec: &ParamSpec, o: &Graded) -> Scalar {
        spec.chi(&self.fdeg, &o.hdeg)
    }

    /// χ^self(h).
    pub fn chi(&self, spec: &ParamSpec, h: &GroupElement) -> Scalar {
        spec.chi(&self.fdeg, h)
    }

    pub fn mul(&self, spec: &ParamSpec, o: &Graded) -> Graded {
        Graded {
            elem: multiply(spec, &self.elem, &o.elem),
            fdeg: self.fdeg.iter().zip(&o.fdeg).map(|(a, b)| a + b).collect(),
            hdeg: self.hdeg.mul(&o.hdeg),
        }
    }

    pub fn br(&self, spec: &ParamSpec, o: &Graded) -> Graded {
        Graded {
            elem: skew(spec, &self.elem, &o.elem, &self.p(spec, o)),
            fdeg: self.fdeg.iter().zip(&o.fdeg).map(|(a, b)| a + b).collect(),
            hdeg: self.hdeg.mul(&o.hdeg),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Graded {
        Graded {
            elem: self.elem.scale(c),
            ..self.clone()
        }
    }

    /// Sum of two elements of the same nominal degree.
    pub fn add(&self, o: &Graded) -> Graded {
        debug_assert!(self.fdeg == o.fdeg && self.hdeg == o.hdeg, "adding different degrees");
        Graded {
            elem: self.elem.add(&o.elem),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Graded) -> Graded {
        self.add(&o.scale(&-Scalar::one()))
    }
}

/// σ(x_i) = −g_i⁻¹x_i, σ(x_i⁻) = −f_i⁻¹x_i⁻, σ(h) = h⁻¹, extended as an
/// anti-automorphism.
pub fn antipode(spec: &ParamSpec, a: &Element) -> Element {
    let n = spec.n;
    let letter = |x: u8, sign: Sign| {
        let g = Element::group(GroupElement::letter(n, x, sign).inv());
        multiply(spec, &g, &Element::word(n, sign, &[x as usize + 1])).neg()
    };
    let mut out = Element::zero();
    for (t, c) in &a.terms {
        let mut acc = Element::scalar(n, c.clone());
        for &x in t.pos.iter().rev() {
            acc = multiply(spec, &acc, &letter(x, Sign::Positive));
        }
        acc = multiply(spec, &acc, &Element::group(t.grp.inv()));
        for &x in t.neg.iter().rev() {
            acc = multiply(spec, &acc, &letter(x, Sign::Negative));
        }
        out = out.add(&acc);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(MixedTerm, MixedTerm), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((MixedTerm, MixedTerm), Scalar)>) -> Self {
        let mut acc: HashMap<(MixedTerm, MixedTerm), Scalar> = HashMap::new();
        for (k, c) in it {
            *acc.entry(k).or_insert_with(Scalar::zero) += c;
        }
        TensorElement {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// a ⊗ b.
    pub fn tensor(a: &Element, b: &Element) -> Self {
        let mut out = Vec::new();
        for (ta, ca) in a.terms() {
            for (tb, cb) in b.terms() {
                out.push(((ta.clone(), tb.clone()), ca * cb));
            }
        }
        Self::from_terms(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MixedTerm, MixedTerm), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        Self::from_terms(self.terms.iter().chain(o.terms.iter()).map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone()))
                .chain(o.terms.iter().map(|(k, c)| (k.clone(), -c.clone()))),
        )
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        Self::from_terms(self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    /// Applies `f` to each leg pair and sums.
    pub fn map_legs(&self, f: impl Fn(&MixedTerm, &MixedTerm) -> (Element, Element)) -> TensorElement {
        let mut out = Vec::new();
        for ((l, r), c) in &self.terms {
            let (a, b) = f(l, r);
            for (ta, ca) in a.terms() {
                for (tb, cb) in b.terms() {
                    out.push(((ta.clone(), tb.clone()), c * ca * cb));
                }
            }
        }
        Self::from_terms(out)
    }

    /// (ε ⊗ id).
    pub fn counit_left(&self) -> Element {
        Element::from_terms(self.terms.iter().filter_map(|((l, r), c)| {
            let e = counit_term(l) * c;
            (!e.is_zero()).then(|| (r.clone(), e))
        }))
    }

    /// (id ⊗ ε).
    pub fn counit_right(&self) -> Element {
        Element::from_terms(self.terms.iter().filter_map(|((l, r), c)| {
            let e = counit_term(r) * c;
            (!e.is_zero()).then(|| (l.clone(), e))
        }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                serde_json::json!({
                    "coeff": format_scalar(c),
                    "left": Element::monomial(l.clone(), Scalar::one()).to_json()[0],
                    "right": Element::monomial(r.clone(), Scalar::one()).to_json()[0],
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| format!("({c}) {l} ⊗ {r}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn counit_term(t: &MixedTerm) -> Scalar {
    if t.neg.is_empty() && t.pos.is_empty() {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// ε on elements: the coefficient sum of pure group terms.
pub fn counit(a: &Element) -> Scalar {
    a.terms().map(|(t, c)| counit_term(t) * c).sum()
}

fn tensor_mul(st: &mut Straightener, a: &TensorElement, b: &TensorElement) -> TensorElement {
    let mut acc: HashMap<(MixedTerm, MixedTerm), Scalar> = HashMap::new();
    for ((al, ar), ca) in &a.terms {
        for ((bl, br), cb) in &b.terms {
            let mut left = Acc::new();
            st.mul_terms(al, bl, &Scalar::one(), &mut left);
            let mut right = Acc::new();
            st.mul_terms(ar, br, &Scalar::one(), &mut right);
            let c = ca * cb;
            for (lt, lc) in &left {
                for (rt, rc) in &right {
                    *acc.entry((lt.clone(), rt.clone())).or_insert_with(Scalar::zero) += &c * lc * rc;
                }
            }
        }
    }
    TensorElement {
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

/// Δ(x_i) = x_i⊗1 + g_i⊗x_i, Δ(x_i⁻) = x_i⁻⊗1 + f_i⊗x_i⁻, Δ(h) = h⊗h,
/// extended multiplicatively.
pub fn coproduct(spec: &ParamSpec, a: &Element) -> TensorElement {
    let n = spec.n;
    let mut st = Straightener::new(spec);
    let unit = MixedTerm::unit(n);
    let gen = |x: u8, sign: Sign| {
        let mut t = MixedTerm::unit(n);
        let mut g = MixedTerm::unit(n);
        g.grp = GroupElement::letter(n, x, sign);
        match sign {
            Sign::Positive => t.pos = [x].into_iter().collect(),
            Sign::Negative => t.neg = [x].into_iter().collect(),
        }
        TensorElement::from_terms([
            ((t.clone(), unit.clone()), Scalar::one()),
            ((g, t), Scalar::one()),
        ])
    };
    let mut out: Vec<((MixedTerm, MixedTerm), Scalar)> = Vec::new();
    for (t, c) in &a.terms {
        let mut hh = MixedTerm::unit(n);
        hh.grp = t.grp.clone();
        let mut d = TensorElement::from_terms([((unit.clone(), unit.clone()), c.clone())]);
        for &x in &t.neg {
            d = tensor_mul(&mut st, &d, &gen(x, Sign::Negative));
        }
        d = tensor_mul(
            &mut st,
            &d,
            &TensorElement::from_terms([((hh.clone(), hh), Scalar::one())]),
        );
        for &x in &t.pos {
            d = tensor_mul(&mut st, &d, &gen(x, Sign::Positive));
        }
        out.extend(d.terms);
    }
    TensorElement::from_terms(out)
}

/// ε⁻ ⊗ ε⁰ ⊗ id: drops terms with negative letters and erases group parts.
pub fn project_positive(a: &Element) -> Element {
    a.map_terms(|t, c| {
        t.neg.is_empty().then(|| {
            (
                MixedTerm {
                    neg: Word::new(),
                    grp: GroupElement::identity(t.n()),
                    pos: t.pos.clone(),
                },
                c.clone(),
            )
        })
    })
}

/// Maximal Γ⁺⊕Γ⁻ degree among the terms.
pub fn degree(a: &Element) -> Result<Degree> {
    a.terms().map(|(t, _)| t.degree()).max().ok_or(Error::ZeroElement)
}

pub fn compare_degrees(a: &Degree, b: &Degree) -> std::cmp::Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{frac, int, make_spec, FreeChoices};
    use proptest::prelude::*;

    fn spec2() -> ParamSpec {
        let mut free = FreeChoices::new();
        free.insert((1, 2), int(3));
        make_spec(2, int(2), &free, None).unwrap()
    }

    fn x(i: usize) -> Element {
        Element::x(2, i)
    }

    fn xm(i: usize) -> Element {
        Element::xm(2, i)
    }

    fn grp(h: GroupElement) -> Element {
        Element::group(h)
    }

    #[test]
    fn mixed_commutation() {
        let s = spec2();
        let lhs = multiply(&s, &x(1), &xm(1));
        let rhs = multiply(&s, &xm(1), &x(1))
            .scale(&int(4))
            .add(&Element::one(2))
            .sub(&grp(GroupElement::h(2, 1)));
        assert_eq!(lhs, rhs);
        assert_eq!(
            multiply(&s, &x(1), &grp(GroupElement::g(2, 2))),
            multiply(&s, &grp(GroupElement::g(2, 2)), &x(1)).scale(&int(3))
        );
        // x_2·(1 − g_1f_1) = x_2 − q⁻²·g_1f_1x_2
        let one_minus_h = Element::one(2).sub(&grp(GroupElement::h(2, 1)));
        let got = multiply(&s, &x(2), &one_minus_h);
        let want = x(2).sub(&multiply(&s, &grp(GroupElement::h(2, 1)), &x(2)).scale(&frac(1, 4)));
        assert_eq!(got, want);
    }

    #[test]
    fn bracket_examples() {
        let s = spec2();
        assert_eq!(
            bracket(&s, &x(1), &xm(1)).unwrap(),
            Element::one(2).sub(&grp(GroupElement::h(2, 1)))
        );
        assert!(bracket(&s, &x(1), &xm(2)).unwrap().is_zero());
        let bad = Element::one(2).sub(&grp(GroupElement::h(2, 1)));
        assert!(matches!(
            bracket(&s, &x(1), &bad),
            Err(Error::Homogeneity { side: "right", .. })
        ));
    }

    #[test]
    fn antipode_examples() {
        let s = spec2();
        let got = antipode(&s, &x(1));
        let want = multiply(&s, &grp(GroupElement::g(2, 1).inv()), &x(1)).neg();
        assert_eq!(got, want);
        let h = GroupElement::g(2, 1).mul(&GroupElement::f(2, 2));
        assert_eq!(antipode(&s, &grp(h.clone())), grp(h.inv()));
    }

    #[test]
    fn coproduct_examples() {
        let s = spec2();
        let d = coproduct(&s, &x(1));
        let want = TensorElement::tensor(&x(1), &Element::one(2))
            .add(&TensorElement::tensor(&grp(GroupElement::g(2, 1)), &x(1)));
        assert_eq!(d, want);
        let g1 = grp(GroupElement::g(2, 1));
        assert_eq!(coproduct(&s, &g1), TensorElement::tensor(&g1, &g1));
    }

    #[test]
    fn projection_and_degree() {
        let n = 2;
        let h = GroupElement::h(n, 1);
        let mixed = Element::monomial(
            MixedTerm {
                neg: [0].into_iter().collect(),
                grp: h.clone(),
                pos: [1].into_iter().collect(),
            },
            int(1),
        );
        assert!(project_positive(&mixed).is_zero());
        let s = spec2();
        assert_eq!(project_positive(&multiply(&s, &grp(h.clone()), &x(2))), x(2));
        assert!(project_positive(&Element::one(n).sub(&grp(h.clone()))).is_zero());
        assert_eq!(degree(&Element::one(n).sub(&grp(h))).unwrap(), Degree::zero(n));
        assert!(degree(&Element::zero()).is_err());
        let d = degree(&multiply(&s, &x(1), &x(2))).unwrap();
        assert_eq!(d.pos, vec![1, 1]);
    }

    #[test]
    fn json_round_trip() {
        let s = spec2();
        let e = multiply(&s, &x(1), &xm(1)).add(&xm(2));
        let back = Element::from_json(2, &e.to_json()).unwrap();
        assert_eq!(e, back);
    }

    fn arb_term(n: usize) -> impl Strategy<Value = Element> {
        (
            proptest::collection::vec(0u8..n as u8, 0..3),
            proptest::collection::vec(-1i32..2, 2 * n),
            proptest::collection::vec(0u8..n as u8, 0..3),
            -3i64..4,
        )
            .prop_map(move |(neg, e, pos, c)| {
                Element::monomial(
                    MixedTerm {
                        neg: neg.into(),
                        grp: GroupElement::from_exponents(e),
                        pos: pos.into(),
                    },
                    int(c),
                )
            })
    }

    fn arb_elem(n: usize) -> impl Strategy<Value = Element> {
        proptest::collection::vec(arb_term(n), 1..3)
            .prop_map(|v| v.iter().fold(Element::zero(), |a, b| a.add(b)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplication_is_associative(a in arb_elem(2), b in arb_elem(2), c in arb_elem(2)) {
            let s = &ParamSpec::defaults(2)[1];
            let l = multiply(s, &multiply(s, &a, &b), &c);
            let r = multiply(s, &a, &multiply(s, &b, &c));
            prop_assert_eq!(l, r);
        }

        #[test]
        fn antipode_is_anti_multiplicative(a in arb_elem(2), b in arb_elem(2)) {
            let s = &ParamSpec::defaults(2)[0];
            let l = antipode(s, &multiply(s, &a, &b));
            let r = multiply(s, &antipode(s, &b), &antipode(s, &a));
            prop_assert_eq!(l, r);
        }

        #[test]
        fn coproduct_is_multiplicative_and_counital(a in arb_elem(2), b in arb_elem(2)) {
            let s = &ParamSpec::defaults(2)[2];
            let dab = coproduct(s, &multiply(s, &a, &b));
            let mut st = Straightener::new(s);
            let prod = tensor_mul(&mut st, &coproduct(s, &a), &coproduct(s, &b));
            prop_assert_eq!(&dab, &prod);
            prop_assert_eq!(dab.counit_left(), multiply(s, &a, &b));
            prop_assert_eq!(dab.counit_right(), multiply(s, &a, &b));
        }

        #[test]
        fn antipode_axiom(a in arb_term(2)) {
            // m(σ ⊗ id)Δ = ε·1
            let s = &ParamSpec::defaults(2)[0];
            let d = coproduct(s, &a);
            let mut acc = Element::zero();
            for ((l, r), c) in d.terms() {
                let l = antipode(s, &Element::monomial(l.clone(), c.clone()));
                acc = acc.add(&multiply(s, &l, &Element::monomial(r.clone(), int(1))));
            }
            prop_assert_eq!(acc, Element::scalar(2, counit(&a)));
        }
    }
}
