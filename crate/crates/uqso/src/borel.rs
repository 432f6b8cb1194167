//! The type-B quotient U_q(so_{2n+1}).
//!
//! Equality is decided by linear algebra in each multidegree: the Serre ideal
//! slice of constitution d is spanned by x_i·I_{d−e_i}, I_{d−e_i}·x_i and the
//! relations of constitution d. Its row-reduced basis (leading words under
//! deg-lex with x_1 largest) gives a canonical reduction to the complement.
//! The negative half uses the same construction for the mirrored spec, because
//! x_i⁻ ↦ x_i identifies it with the positive half of that spec.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::freealg::{
    bracket, coproduct, counts, multiply, Element, GroupElement, MixedTerm, Sign, TensorElement,
    Word,
};
use crate::params::{ParamSpec, Scalar};
use crate::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 12;

/// Pure polynomial on zero-based words.
pub type Poly = BTreeMap<Word, Scalar>;

fn poly_add(acc: &mut Poly, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            poly_add(&mut out, w, cu * cv);
        }
    }
    out
}

fn poly_counts(n: usize, a: &Poly) -> Vec<i64> {
    a.keys().next().map(|w| counts(n, w)).unwrap_or_else(|| vec![0; n])
}

/// Skew bracket of homogeneous pure polynomials under `spec`.
pub fn poly_bracket(spec: &ParamSpec, a: &Poly, b: &Poly) -> Poly {
    let n = spec.n;
    let c = spec.pform_counts(&poly_counts(n, a), &poly_counts(n, b));
    let mut out = poly_mul(a, b);
    for (w, x) in poly_mul(b, a) {
        poly_add(&mut out, w, -(x * &c));
    }
    out
}

pub fn letter_poly(i: usize) -> Poly {
    let mut p = Poly::new();
    p.insert([(i - 1) as u8].into_iter().collect(), Scalar::one());
    p
}

/// Type-B Serre relations, positive side for a given spec.
fn type_b_relations(spec: &ParamSpec) -> Vec<Poly> {
    let n = spec.n;
    let x = letter_poly;
    let br = |a: &Poly, b: &Poly| poly_bracket(spec, a, b);
    let mut out = Vec::new();
    for i in 1..n {
        out.push(br(&x(i), &br(&x(i), &x(i + 1))));
    }
    for i in 1..=n {
        for j in i + 2..=n {
            out.push(br(&x(i), &x(j)));
        }
    }
    for i in 1..n.saturating_sub(1) {
        out.push(br(&br(&x(i), &x(i + 1)), &x(i + 1)));
    }
    if n >= 2 {
        out.push(br(&br(&br(&x(n - 1), &x(n)), &x(n)), &x(n)));
    }
    out
}

/// Positive relations and negative ones (the latter stored as positive words
/// of the mirrored spec, to be read with x ↦ x⁻).
#[derive(Debug, Clone)]
pub struct SerrePresentation {
    pub n: usize,
    pub positive: Vec<Poly>,
    pub negative: Vec<Poly>,
}

impl SerrePresentation {
    pub fn type_b(spec: &ParamSpec) -> Self {
        SerrePresentation {
            n: spec.n,
            positive: type_b_relations(spec),
            negative: type_b_relations(&spec.mirrored()),
        }
    }

    pub fn positive_elements(&self) -> Vec<Element> {
        self.positive
            .iter()
            .map(|p| Element::from_poly(self.n, Sign::Positive, p.clone()))
            .collect()
    }

    pub fn negative_elements(&self) -> Vec<Element> {
        self.negative
            .iter()
            .map(|p| Element::from_poly(self.n, Sign::Negative, p.clone()))
            .collect()
    }
}

type Row = BTreeMap<Word, Scalar>;

#[derive(Debug, Default)]
struct Slice {
    /// Fully reduced basis of the ideal slice, one row per leading word.
    basis: Vec<Row>,
    /// Leading word ↦ its normal form.
    reduce_map: HashMap<Word, Vec<(Word, Scalar)>>,
}

type Cell = Arc<OnceLock<Result<Arc<Slice>>>>;

/// Lazily computed ideal slices for one Borel half, one per constitution.
pub struct NormalFormTable {
    n: usize,
    budget: usize,
    relations: Vec<(Vec<u32>, Poly)>,
    cells: Mutex<HashMap<Vec<u32>, Cell>>,
}

fn sub_scaled(row: &mut Row, other: &Row, c: &Scalar) {
    for (w, x) in other {
        poly_add(row, w.clone(), -(x * c));
    }
}

impl NormalFormTable {
    pub fn new(n: usize, relations: &[Poly], budget: usize) -> Self {
        let relations = relations
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let w = r.keys().next().unwrap();
                (counts(n, w).iter().map(|&c| c as u32).collect(), r.clone())
            })
            .collect();
        NormalFormTable {
            n,
            budget,
            relations,
            cells: Mutex::new(HashMap::new()),
        }
    }

    fn slice(&self, d: &[u32]) -> Result<Arc<Slice>> {
        let total: u32 = d.iter().sum();
        if total as usize > self.budget {
            return Err(Error::DegreeBudgetExceeded {
                multidegree: d.to_vec(),
                budget: self.budget,
            });
        }
        let cell = {
            let mut cells = self.cells.lock().expect("table lock");
            cells.entry(d.to_vec()).or_default().clone()
        };
        cell.get_or_init(|| self.compute(d).map(Arc::new)).clone()
    }

    fn compute(&self, d: &[u32]) -> Result<Slice> {
        let total: u32 = d.iter().sum();
        if total < 2 {
            return Ok(Slice::default());
        }
        let mut rows: Vec<Row> = Vec::new();
        for i in 0..self.n {
            if d[i] == 0 {
                continue;
            }
            let mut lower = d.to_vec();
            lower[i] -= 1;
            let sub = self.slice(&lower)?;
            for r in &sub.basis {
                let mut left = Row::new();
                let mut right = Row::new();
                for (w, c) in r {
                    let mut lw: Word = [i as u8].into_iter().collect();
                    lw.extend_from_slice(w);
                    left.insert(lw, c.clone());
                    let mut rw = w.clone();
                    rw.push(i as u8);
                    right.insert(rw, c.clone());
                }
                rows.push(left);
                rows.push(right);
            }
        }
        for (c, r) in &self.relations {
            if c.as_slice() == d {
                rows.push(r.clone());
            }
        }
        // Echelon form keyed by leading (lexicographically smallest) word.
        let mut pivots: BTreeMap<Word, Row> = BTreeMap::new();
        for mut row in rows {
            loop {
                let Some((lead, c)) = row.iter().next().map(|(w, c)| (w.clone(), c.clone())) else {
                    break;
                };
                match pivots.get(&lead) {
                    Some(p) => sub_scaled(&mut row, p, &c),
                    None => {
                        let inv = c.recip();
                        for v in row.values_mut() {
                            *v *= &inv;
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        // Back substitution, smallest words first so used rows are final.
        let leads: Vec<Word> = pivots.keys().rev().cloned().collect();
        for lead in &leads {
            let mut row = pivots.remove(lead).unwrap();
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(w, _)| pivots.contains_key(*w))
                    .map(|(w, c)| (w.clone(), c.clone()));
                match hit {
                    Some((w, c)) => sub_scaled(&mut row, &pivots[&w], &c),
                    None => break,
                }
            }
            pivots.insert(lead.clone(), row);
        }
        let mut reduce_map = HashMap::new();
        for (lead, row) in &pivots {
            let nf: Vec<(Word, Scalar)> = row
                .iter()
                .skip(1)
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect();
            reduce_map.insert(lead.clone(), nf);
        }
        Ok(Slice {
            basis: pivots.into_values().collect(),
            reduce_map,
        })
    }

    /// Normal form of a single word.
    pub fn normal_form(&self, w: &[u8]) -> Result<Vec<(Word, Scalar)>> {
        if w.len() < 2 {
            return Ok(vec![(w.into(), Scalar::one())]);
        }
        let d: Vec<u32> = counts(self.n, w).iter().map(|&c| c as u32).collect();
        let slice = self.slice(&d)?;
        Ok(match slice.reduce_map.get(w) {
            Some(nf) => nf.clone(),
            None => vec![(w.into(), Scalar::one())],
        })
    }

    /// Dimension of the ideal slice of constitution d.
    pub fn ideal_dimension(&self, d: &[u32]) -> Result<usize> {
        Ok(self.slice(d)?.basis.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
    Full,
}

/// U_q(so_{2n+1}) at a specialization: presentation plus both normal-form
/// tables.
pub struct Quotient {
    pub spec: ParamSpec,
    pub pres: SerrePresentation,
    pos: NormalFormTable,
    neg: NormalFormTable,
}

impl Quotient {
    pub fn new(spec: &ParamSpec, max_degree: usize) -> Self {
        let pres = SerrePresentation::type_b(spec);
        Quotient {
            spec: spec.clone(),
            pos: NormalFormTable::new(spec.n, &pres.positive, max_degree),
            neg: NormalFormTable::new(spec.n, &pres.negative, max_degree),
            pres,
        }
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn table(&self, sign: Sign) -> &NormalFormTable {
        match sign {
            Sign::Positive => &self.pos,
            Sign::Negative => &self.neg,
        }
    }

    pub fn reduce(&self, a: &Element, side: Side) -> Result<Element> {
        let mut acc: HashMap<MixedTerm, Scalar> = HashMap::new();
        for (t, c) in a.terms() {
            let negs = if side == Side::Positive {
                vec![(t.neg.clone(), Scalar::one())]
            } else {
                self.neg.normal_form(&t.neg)?
            };
            let poss = if side == Side::Negative {
                vec![(t.pos.clone(), Scalar::one())]
            } else {
                self.pos.normal_form(&t.pos)?
            };
            for (wn, cn) in &negs {
                for (wp, cp) in &poss {
                    let key = MixedTerm {
                        neg: wn.clone(),
                        grp: t.grp.clone(),
                        pos: wp.clone(),
                    };
                    *acc.entry(key).or_insert_with(Scalar::zero) += c * cn * cp;
                }
            }
        }
        Ok(Element::from_terms(acc))
    }

    pub fn nf(&self, a: &Element) -> Result<Element> {
        self.reduce(a, Side::Full)
    }

    /// Reduces both legs.
    pub fn reduce_tensor(&self, t: &TensorElement) -> Result<TensorElement> {
        let mut out = Vec::new();
        for ((l, r), c) in t.terms() {
            let l = self.nf(&Element::monomial(l.clone(), Scalar::one()))?;
            let r = self.nf(&Element::monomial(r.clone(), Scalar::one()))?;
            for (tl, cl) in l.terms() {
                for (tr, cr) in r.terms() {
                    out.push(((tl.clone(), tr.clone()), c * cl * cr));
                }
            }
        }
        Ok(TensorElement::from_terms(out))
    }

    pub fn is_zero(&self, a: &Element) -> Result<bool> {
        Ok(self.nf(a)?.is_zero())
    }

    pub fn equals(&self, a: &Element, b: &Element) -> Result<bool> {
        self.is_zero(&a.sub(b))
    }

    /// α with a = α·b in the quotient; `None` when no such nonzero α exists.
    /// Both zero gives α = 1.
    pub fn is_proportional(&self, a: &Element, b: &Element) -> Result<Option<Scalar>> {
        let ra = self.nf(a)?;
        let rb = self.nf(b)?;
        Ok(proportionality(&ra, &rb))
    }

    /// Quotient dimension in positive constitution d.
    pub fn positive_dimension(&self, d: &[u32]) -> Result<usize> {
        Ok(multinomial(d) - self.pos.ideal_dimension(d)?)
    }
}

/// α with a = α·b for already reduced elements.
pub fn proportionality(a: &Element, b: &Element) -> Option<Scalar> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Some(Scalar::one()),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    if a.len() != b.len() {
        return None;
    }
    let (t, cb) = b.terms().next().unwrap();
    let alpha = a.coeff(t) / cb;
    if alpha.is_zero() {
        return None;
    }
    (a == &b.scale(&alpha)).then_some(alpha)
}

pub fn multinomial(d: &[u32]) -> usize {
    let mut out: u128 = 1;
    let mut total = 0u128;
    for &k in d {
        for j in 1..=k as u128 {
            total += 1;
            out = out * total / j;
        }
    }
    out as usize
}

/// Number of PBW monomials in the u[k,m], k ≤ m < ψ(k), of constitution d
/// (Kostant partition function of B_n).
pub fn pbw_count(n: usize, d: &[u32]) -> usize {
    let mut roots: Vec<Vec<u32>> = Vec::new();
    for k in 1..=n as i64 {
        for m in k..crate::params::psi(n, k) {
            let mut r = vec![0u32; n];
            for t in k..=m {
                r[crate::params::fold(n, t) - 1] += 1;
            }
            roots.push(r);
        }
    }
    fn go(roots: &[Vec<u32>], d: &mut Vec<u32>, from: usize, memo: &mut HashMap<(Vec<u32>, usize), usize>) -> usize {
        if d.iter().all(|&x| x == 0) {
            return 1;
        }
        if from == roots.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(d.clone(), from)) {
            return v;
        }
        let mut total = go(roots, d, from + 1, memo);
        let r = &roots[from];
        let mut used = 0;
        while r.iter().zip(d.iter()).all(|(a, b)| a <= b) {
            for (x, a) in d.iter_mut().zip(r) {
                *x -= a;
            }
            used += 1;
            total += go(roots, d, from + 1, memo);
        }
        for _ in 0..used {
            for (x, a) in d.iter_mut().zip(r) {
                *x += a;
            }
        }
        memo.insert((d.clone(), from), total);
        total
    }
    go(&roots, &mut d.to_vec(), 0, &mut HashMap::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// ∂_i
    D,
    /// ∂*_i
    DStar,
    /// ∂_{−i}
    DNeg,
    /// ∂*_{−i}
    DNegStar,
}

impl Variant {
    pub fn sign(self) -> Sign {
        match self {
            Variant::D | Variant::DStar => Sign::Positive,
            Variant::DNeg | Variant::DNegStar => Sign::Negative,
        }
    }
}

/// Skew derivations with the Leibniz twists
/// ∂_i(uv) = ∂_i(u)v + χ^u(g_i)u∂_i(v), ∂*_i(uv) = χ^i(g_v)∂*_i(u)v + u∂*_i(v),
/// ∂_{−i}(u⁻v⁻) = ∂_{−i}(u⁻)v⁻ + χ^{u⁻}(f_i)u⁻∂_{−i}(v⁻),
/// ∂*_{−i}(u⁻v⁻) = χ^i(f_v)⁻¹∂*_{−i}(u⁻)v⁻ + u⁻∂*_{−i}(v⁻).
pub fn derive(spec: &ParamSpec, f: &Element, i: usize, variant: Variant) -> Result<Element> {
    let sign = variant.sign();
    let poly = f.poly(sign)?;
    let n = spec.n;
    if !(1..=n).contains(&i) {
        return Err(Error::Index(format!("derivative index {i} outside 1..={n}")));
    }
    let a = (i - 1) as u8;
    let p = |x: u8, y: u8| &spec.p[x as usize][y as usize];
    let mut out = Poly::new();
    for (w, c) in &poly {
        for t in 0..w.len() {
            if w[t] != a {
                continue;
            }
            let mut coeff = c.clone();
            match variant {
                Variant::D => w[..t].iter().for_each(|&s| coeff *= p(s, a)),
                Variant::DStar => w[t + 1..].iter().for_each(|&s| coeff *= p(a, s)),
                Variant::DNeg => w[..t].iter().for_each(|&s| coeff /= p(a, s)),
                Variant::DNegStar => w[t + 1..].iter().for_each(|&s| coeff /= p(s, a)),
            }
            let mut rest = Word::from(&w[..t]);
            rest.extend_from_slice(&w[t + 1..]);
            poly_add(&mut out, rest, coeff);
        }
    }
    Ok(Element::from_poly(n, sign, out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn ok() -> Self {
        Verdict {
            pass: true,
            witness: None,
        }
    }

    pub fn fail(w: impl Into<String>) -> Self {
        Verdict {
            pass: false,
            witness: Some(w.into()),
        }
    }
}

fn homogeneous_parts(n: usize, sign: Sign, f: &Element) -> Result<Vec<(Vec<i64>, Element)>> {
    let mut parts: BTreeMap<Vec<i64>, Poly> = BTreeMap::new();
    for (w, c) in f.poly(sign)? {
        parts.entry(counts(n, &w)).or_default().insert(w, c);
    }
    Ok(parts
        .into_iter()
        .map(|(d, p)| (d, Element::from_poly(n, sign, p)))
        .collect())
}

/// Checks [u, x_i⁻] = ∂*_i(u) − p_ii⁻¹ p(x_i,u) g_i f_i ∂_i(u) for positive f,
/// or [x_i, u⁻] = ∂*_{−i}(u⁻) p(x_i,u⁻) p_ii⁻¹ − g_i f_i ∂_{−i}(u⁻) for
/// negative f, in the quotient.
pub fn check_adjoint(q: &Quotient, f: &Element, i: usize) -> Result<Verdict> {
    let spec = &q.spec;
    let n = spec.n;
    let sign = f.pure_sign().ok_or(Error::MixedSign { expected: "pure-sign" })?;
    let hi = Element::group(GroupElement::h(n, i));
    let pii_inv = spec.p[i - 1][i - 1].recip();
    let mut lhs = Element::zero();
    let mut rhs = Element::zero();
    for (deg, u) in homogeneous_parts(n, sign, f)? {
        match sign {
            Sign::Positive => {
                lhs = lhs.add(&bracket(spec, &u, &Element::xm(n, i))?);
                // p(x_i, u) = χ^i(g_u); the group factor sits on the left
                let mut unit = vec![0i64; n];
                unit[i - 1] = 1;
                let gu = GroupElement::from_exponents(
                    deg.iter().map(|&c| c as i32).chain(std::iter::repeat_n(0, n)).collect(),
                );
                let c = &pii_inv * spec.chi(&unit, &gu);
                let tail = multiply(spec, &hi, &derive(spec, &u, i, Variant::D)?).scale(&c);
                rhs = rhs.add(&derive(spec, &u, i, Variant::DStar)?.sub(&tail));
            }
            Sign::Negative => {
                lhs = lhs.add(&bracket(spec, &Element::x(n, i), &u)?);
                // p(x_i, u⁻) = χ^i(f_u)
                let mut unit = vec![0i64; n];
                unit[i - 1] = 1;
                let fu = GroupElement::from_exponents(
                    std::iter::repeat_n(0, n)
                        .chain(deg.iter().map(|&c| c as i32))
                        .collect(),
                );
                let c = spec.chi(&unit, &fu) * &pii_inv;
                let head = derive(spec, &u, i, Variant::DNegStar)?.scale(&c);
                let tail = multiply(spec, &hi, &derive(spec, &u, i, Variant::DNeg)?);
                rhs = rhs.add(&head.sub(&tail));
            }
        }
    }
    let diff = q.nf(&lhs.sub(&rhs))?;
    Ok(if diff.is_zero() {
        Verdict::ok()
    } else {
        Verdict::fail(format!("lhs − rhs = {diff}"))
    })
}

fn leg_len(t: &MixedTerm) -> usize {
    t.pos.len() + t.neg.len()
}

/// Checks (calc)/(calcdu) for positive u, or (calc1)/(dum2) for negative u:
/// after subtracting the stated truncation, every remaining term of Δ(u) has
/// a right leg (first congruence) or left leg (second) of length ≥ 2.
pub fn check_coproduct_congruence(spec: &ParamSpec, u: &Element) -> Result<Verdict> {
    let n = spec.n;
    let sign = u.pure_sign().ok_or(Error::MixedSign { expected: "pure-sign" })?;
    let (dv, dsv) = match sign {
        Sign::Positive => (Variant::D, Variant::DStar),
        Sign::Negative => (Variant::DNeg, Variant::DNegStar),
    };
    let letter_group = |i: usize| match sign {
        Sign::Positive => GroupElement::g(n, i),
        Sign::Negative => GroupElement::f(n, i),
    };
    let letter = |i: usize| Element::word(n, sign, &[i]);
    for (w, c) in u.poly(sign)? {
        let wel = Element::from_poly(n, sign, [(w.clone(), c.clone())]);
        let d = coproduct(spec, &wel);
        let gw = w.iter().fold(GroupElement::identity(n), |g, &a| g.mul(&letter_group(a as usize + 1)));
        let mut first = d.sub(&TensorElement::tensor(&wel, &Element::one(n)));
        let mut second = d.sub(&TensorElement::tensor(&Element::group(gw.clone()), &wel));
        for i in 1..=n {
            let gi = Element::group(letter_group(i));
            let di = multiply(spec, &gi, &derive(spec, &wel, i, dv)?);
            first = first.sub(&TensorElement::tensor(&di, &letter(i)));
            let left = multiply(spec, &Element::group(gw.mul(&letter_group(i).inv())), &letter(i));
            second = second.sub(&TensorElement::tensor(&left, &derive(spec, &wel, i, dsv)?));
        }
        if let Some(((l, r), c)) = first.terms().find(|((_, r), _)| leg_len(r) < 2) {
            return Ok(Verdict::fail(format!("first congruence: ({c}) {l} ⊗ {r}")));
        };
        if let Some(((l, r), c)) = second.terms().find(|((l, _), _)| leg_len(l) < 2) {
            return Ok(Verdict::fail(format!("second congruence: ({c}) {l} ⊗ {r}")));
        };
    }
    Ok(Verdict::ok())
}

/// Additive monoid generated by finitely many positive degree vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaMonoid {
    pub gens: Vec<Vec<u32>>,
}

impl SigmaMonoid {
    pub fn new(mut gens: Vec<Vec<u32>>) -> Self {
        gens.retain(|g| g.iter().any(|&x| x > 0));
        gens.sort();
        gens.dedup();
        SigmaMonoid { gens }
    }

    pub fn member(&self, gamma: &[i64]) -> bool {
        if gamma.iter().any(|&x| x < 0) {
            return false;
        }
        let g: Vec<u32> = gamma.iter().map(|&x| x as u32).collect();
        self.member_memo(&g, &mut HashMap::new())
    }

    fn member_memo(&self, g: &[u32], memo: &mut HashMap<Vec<u32>, bool>) -> bool {
        if g.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&v) = memo.get(g) {
            return v;
        }
        let mut found = false;
        for gen in &self.gens {
            if gen.iter().zip(g).all(|(a, b)| a <= b) {
                let rest: Vec<u32> = g.iter().zip(gen).map(|(a, b)| a - b).collect();
                if self.member_memo(&rest, memo) {
                    found = true;
                    break;
                }
            }
        }
        memo.insert(g.to_vec(), found);
        found
    }

    /// A nonzero member that is not a sum of two nonzero members.
    pub fn is_indecomposable(&self, gamma: &[i64]) -> bool {
        if !self.member(gamma) || gamma.iter().all(|&x| x == 0) {
            return false;
        }
        let mut beta = vec![0i64; gamma.len()];
        loop {
            // odometer over the box 0 ≤ β ≤ γ
            let mut idx = 0;
            loop {
                if idx == gamma.len() {
                    return true;
                }
                if beta[idx] < gamma[idx] {
                    beta[idx] += 1;
                    break;
                }
                beta[idx] = 0;
                idx += 1;
            }
            if beta == gamma {
                continue;
            }
            let rest: Vec<i64> = gamma.iter().zip(&beta).map(|(a, b)| a - b).collect();
            if self.member(&beta) && self.member(&rest) {
                return false;
            }
        }
    }
}

/// f ∈ U iff ∂_u(f) = 0 for all words u with D(f) ∉ Σ + D(u).
pub fn integrability_check(q: &Quotient, mon: &SigmaMonoid, f: &Element) -> Result<bool> {
    let n = q.n();
    let f = q.nf(f)?;
    if f.is_zero() {
        return Ok(true);
    }
    let poly = f.poly(Sign::Positive)?;
    let df = counts(n, poly.keys().next().unwrap());
    let mut stack = vec![(f, vec![0i64; n])];
    let mut seen: HashSet<(Vec<i64>, Vec<(MixedTerm, String)>)> = HashSet::new();
    while let Some((g, du)) = stack.pop() {
        let rest: Vec<i64> = df.iter().zip(&du).map(|(a, b)| a - b).collect();
        if !mon.member(&rest) {
            return Ok(false);
        }
        for i in 1..=n {
            let d = q.nf(&derive(&q.spec, &g, i, Variant::D)?)?;
            if d.is_zero() {
                continue;
            }
            let mut du2 = du.clone();
            du2[i - 1] += 1;
            let key = (
                du2.clone(),
                d.terms().map(|(t, c)| (t.clone(), c.to_string())).collect(),
            );
            if seen.insert(key) {
                stack.push((d, du2));
            }
        }
    }
    Ok(true)
}
