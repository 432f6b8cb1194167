//! Black/white schemes of coideal generators and the pair checker.
//!
//! A scheme (k, m, S) is a row of points labeled k−1..=m: k−1 is white, m is
//! black, and an interior point i is black iff i ∈ S.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::borel::SigmaMonoid;
use crate::freealg::Sign;
use crate::generators::root_degree;
use crate::params::psi;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "w")]
    White,
    #[serde(rename = "b")]
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    fn glyph(self) -> char {
        match self {
            Color::White => '∘',
            Color::Black => '●',
        }
    }
}

impl FromStr for Color {
    type Err = Error;
    fn from_str(s: &str) -> Result<Color> {
        match s {
            "white" | "w" => Ok(Color::White),
            "black" | "b" => Ok(Color::Black),
            _ => Err(Error::Parse(format!("unknown color {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Flat,
    TwoLine,
    Shifted,
}

impl FromStr for Style {
    type Err = Error;
    fn from_str(s: &str) -> Result<Style> {
        match s {
            "flat" => Ok(Style::Flat),
            "two_line" | "two-line" => Ok(Style::TwoLine),
            "shifted" => Ok(Style::Shifted),
            _ => Err(Error::Parse(format!("unknown style {s:?}"))),
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::Flat => "flat",
            Style::TwoLine => "two_line",
            Style::Shifted => "shifted",
        })
    }
}

/// Evaluates the white/black regularity quantifier for S ⊆ [k, m).
pub fn is_regular(n: usize, k: i64, m: i64, set: &BTreeSet<i64>, color: Color) -> bool {
    let nn = n as i64;
    if m <= nn || k > nn {
        return true;
    }
    let interior = |x: i64| x >= k && x < m && set.contains(&x);
    match color {
        Color::White => {
            let marked = |x: i64| x == k - 1 || x == m || interior(x);
            (k - 1..m).all(|i| {
                let pi = psi(n, i);
                !(k <= pi && pi <= m + 1) || !(marked(i) && marked(pi - 1))
            })
        }
        Color::Black => (k..=m).all(|i| {
            let pi = psi(n, i);
            !(k <= pi && pi <= m + 1) || interior(i) || interior(pi - 1)
        }),
    }
}

/// Every subset of [k, m).
pub fn all_subsets(k: i64, m: i64) -> Vec<BTreeSet<i64>> {
    let len = (m - k).max(0) as u32;
    (0..1u64 << len)
        .map(|mask| (0..len).filter(|b| mask >> b & 1 == 1).map(|b| k + b as i64).collect())
        .collect()
}

pub fn regular_sets(n: usize, k: i64, m: i64, color: Color) -> Vec<BTreeSet<i64>> {
    all_subsets(k, m)
        .into_iter()
        .filter(|s| is_regular(n, k, m, s, color))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scheme {
    pub n: usize,
    pub sign: Sign,
    pub k: i64,
    pub m: i64,
    pub set: BTreeSet<i64>,
}

/// One column of a two-row picture: a label per row and its color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub label: i64,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPair {
    pub upper: Option<Cell>,
    pub lower: Option<Cell>,
}

impl Scheme {
    pub fn new(n: usize, sign: Sign, k: i64, m: i64, set: impl IntoIterator<Item = i64>) -> Result<Scheme> {
        if k < 1 || k > m || m > 2 * n as i64 {
            return Err(Error::Index(format!("scheme needs 1 ≤ k ≤ m ≤ {}, got ({k},{m})", 2 * n)));
        }
        let set = set.into_iter().filter(|&s| s >= k && s < m).collect();
        Ok(Scheme { n, sign, k, m, set })
    }

    pub fn positive(n: usize, k: i64, m: i64, set: impl IntoIterator<Item = i64>) -> Result<Scheme> {
        Scheme::new(n, Sign::Positive, k, m, set)
    }

    pub fn negative(n: usize, k: i64, m: i64, set: impl IntoIterator<Item = i64>) -> Result<Scheme> {
        Scheme::new(n, Sign::Negative, k, m, set)
    }

    pub fn color(&self, label: i64) -> Option<Color> {
        if label == self.k - 1 {
            Some(Color::White)
        } else if label == self.m {
            Some(Color::Black)
        } else if label >= self.k && label < self.m {
            Some(if self.set.contains(&label) { Color::Black } else { Color::White })
        } else {
            None
        }
    }

    pub fn points(&self) -> Vec<(i64, Color)> {
        (self.k - 1..=self.m).map(|l| (l, self.color(l).unwrap())).collect()
    }

    pub fn is_regular(&self, color: Color) -> bool {
        is_regular(self.n, self.k, self.m, &self.set, color)
    }

    pub fn regular(&self) -> bool {
        self.is_regular(Color::White) || self.is_regular(Color::Black)
    }

    /// True iff the two-row pictures apply (k ≤ n < m).
    pub fn straddles(&self) -> bool {
        let n = self.n as i64;
        self.k <= n && n < self.m
    }

    /// Same interval, interior colors flipped.
    pub fn complement_dual(&self) -> Scheme {
        let set = (self.k..self.m).filter(|s| !self.set.contains(s)).collect();
        Scheme { set, ..self.clone() }
    }

    /// (ψ(m), ψ(k), ψ(S)−1) with no complement.
    pub fn reflect(&self) -> Scheme {
        let n = self.n;
        Scheme {
            n,
            sign: self.sign,
            k: psi(n, self.m),
            m: psi(n, self.k),
            set: self.set.iter().map(|&s| psi(n, s) - 1).collect(),
        }
    }

    /// (ψ(m), ψ(k), complement of ψ(S)−1), the index data of the dual generator.
    pub fn star(&self) -> Scheme {
        self.reflect().complement_dual()
    }

    /// Columns pairing i (lower) with ψ(i) (upper).
    pub fn two_line_columns(&self) -> Result<Vec<RowPair>> {
        self.columns(Style::TwoLine, 0)
    }

    /// Columns pairing i (lower) with ψ(i)−1 (upper); n appears in both rows.
    pub fn shifted_columns(&self) -> Result<Vec<RowPair>> {
        self.columns(Style::Shifted, 1)
    }

    fn columns(&self, style: Style, shift: i64) -> Result<Vec<RowPair>> {
        if !self.straddles() {
            return Err(Error::StyleNotApplicable(style.to_string()));
        }
        let n = self.n as i64;
        let upper_min = n + 1 - shift;
        let first = (self.k - 1).min(psi(self.n, self.m) - shift);
        Ok((first..=n)
            .map(|c| {
                let cell = |l: i64| Cell { label: l, color: self.color(l).unwrap() };
                let up = psi(self.n, c) - shift;
                RowPair {
                    upper: (up >= upper_min && up <= self.m).then(|| cell(up)),
                    lower: (c >= self.k - 1).then(|| cell(c)),
                }
            })
            .collect())
    }

    pub fn render(&self, style: Style) -> Result<String> {
        match style {
            Style::Flat => Ok(self
                .points()
                .iter()
                .map(|(l, c)| format!("{l}:{}", c.glyph()))
                .collect::<Vec<_>>()
                .join(" ")),
            Style::TwoLine | Style::Shifted => {
                let cols = self.columns(style, (style == Style::Shifted) as i64)?;
                let fmt_cell = |c: &Option<Cell>| c.map(|c| format!("{}:{}", c.label, c.color.glyph()));
                let width = cols
                    .iter()
                    .flat_map(|p| [fmt_cell(&p.upper), fmt_cell(&p.lower)])
                    .flatten()
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0);
                let line = |pick: &dyn Fn(&RowPair) -> Option<String>| {
                    cols.iter()
                        .map(|p| format!("{:<width$}", pick(p).unwrap_or_default()))
                        .collect::<Vec<_>>()
                        .join(" ")
                        .trim_end()
                        .to_string()
                };
                Ok(format!(
                    "{}\n{}",
                    line(&|p| fmt_cell(&p.upper)),
                    line(&|p| fmt_cell(&p.lower))
                ))
            }
        }
    }

    /// Folded degrees of [1+t : s] over white t < black s.
    pub fn sigma_generators(&self) -> SigmaMonoid {
        let pts = self.points();
        let mut gens = Vec::new();
        for &(t, ct) in &pts {
            for &(s, cs) in &pts {
                if ct == Color::White && cs == Color::Black && t < s {
                    gens.push(root_degree(self.n, 1 + t, s));
                }
            }
        }
        SigmaMonoid::new(gens)
    }

    pub fn to_json(&self) -> Value {
        json!({"sign": self.sign, "k": self.k, "m": self.m, "set": self.set})
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Scheme> {
        let bad = || Error::Parse(format!("not a scheme: {v}"));
        let sign: Sign = match v.get("sign") {
            Some(s) => serde_json::from_value(s.clone()).map_err(|_| bad())?,
            None => Sign::Positive,
        };
        let k = v.get("k").and_then(Value::as_i64).ok_or_else(bad)?;
        let m = v.get("m").and_then(Value::as_i64).ok_or_else(bad)?;
        let set: Vec<i64> = match v.get("set") {
            Some(s) => serde_json::from_value(s.clone()).map_err(|_| bad())?,
            None => Vec::new(),
        };
        Scheme::new(n, sign, k, m, set)
    }

    pub fn random(n: usize, sign: Sign, rng: &mut impl Rng) -> Scheme {
        let n2 = 2 * n as i64;
        let k = rng.gen_range(1..=n2);
        let m = rng.gen_range(k..=n2);
        let set: Vec<i64> = (k..m).filter(|_| rng.gen_bool(0.5)).collect();
        Scheme::new(n, sign, k, m, set).expect("in range")
    }

    /// A random scheme with a regular set; None if the draw lands on m = ψ(k).
    pub fn random_regular(n: usize, sign: Sign, rng: &mut impl Rng) -> Option<Scheme> {
        let s = Scheme::random(n, sign, rng);
        if s.m == psi(n, s.k) {
            return None;
        }
        let color = if rng.gen_bool(0.5) { Color::White } else { Color::Black };
        let sets = regular_sets(n, s.k, s.m, color);
        let set = sets[rng.gen_range(0..sets.len())].clone();
        Some(Scheme { set, ..s })
    }
}

/// Parses "k,m,s1 s2 ..." or "k,m,s1,s2,...". A trailing empty field means S = ∅.
pub fn parse_scheme(n: usize, sign: Sign, text: &str) -> Result<Scheme> {
    let bad = || Error::Parse(format!("expected k,m[,S...], got {text:?}"));
    let fields: Vec<&str> = text.split([',', ' ']).map(str::trim).collect();
    if fields.len() < 2 {
        return Err(bad());
    }
    let k = fields[0].parse().map_err(|_| bad())?;
    let m = fields[1].parse().map_err(|_| bad())?;
    let set = fields[2..]
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| f.parse().map_err(|_| bad()))
        .collect::<Result<Vec<i64>>>()?;
    Scheme::new(n, sign, k, m, set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Overlay {
    ST,
    STStar,
    SStarT,
    SStarTStar,
}

impl Overlay {
    pub const ALL: [Overlay; 4] = [Overlay::ST, Overlay::STStar, Overlay::SStarT, Overlay::SStarTStar];

    pub fn name(self) -> &'static str {
        match self {
            Overlay::ST => "ST",
            Overlay::STStar => "ST*",
            Overlay::SStarT => "S*T",
            Overlay::SStarTStar => "S*T*",
        }
    }

    /// The partner under a ↦ ψ(a)−1 with colors flipped.
    pub fn rho(self) -> Overlay {
        match self {
            Overlay::ST => Overlay::SStarTStar,
            Overlay::STStar => Overlay::SStarT,
            Overlay::SStarT => Overlay::STStar,
            Overlay::SStarTStar => Overlay::ST,
        }
    }
}

impl Serialize for Overlay {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A column of an overlay: S row on top, T row below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub label: i64,
    pub top: Option<Color>,
    pub bottom: Option<Color>,
}

impl Column {
    pub fn complete(&self) -> Option<(Color, Color)> {
        Some((self.top?, self.bottom?))
    }
}

impl Serialize for Column {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.label, self.top, self.bottom).serialize(s)
    }
}

pub fn columns_of(top: &Scheme, bottom: &Scheme) -> Vec<Column> {
    let lo = (top.k - 1).min(bottom.k - 1);
    let hi = top.m.max(bottom.m);
    (lo..=hi)
        .map(|l| Column { label: l, top: top.color(l), bottom: bottom.color(l) })
        .filter(|c| c.top.is_some() || c.bottom.is_some())
        .collect()
}

/// Moves label a to ψ(a)−1, flips colors and restores increasing order.
pub fn rho_columns(n: usize, cols: &[Column]) -> Vec<Column> {
    cols.iter()
        .rev()
        .map(|c| Column {
            label: psi(n, c.label) - 1,
            top: c.top.map(Color::flip),
            bottom: c.bottom.map(Color::flip),
        })
        .collect()
}

const WW: (Color, Color) = (Color::White, Color::White);
const BB: (Color, Color) = (Color::Black, Color::Black);

/// No complete white-white column strictly before a complete black-black one.
pub fn is_balanced(cols: &[Column]) -> bool {
    let mut seen_ww = false;
    for c in cols {
        match c.complete() {
            Some(BB) if seen_ww => return false,
            Some(WW) => seen_ww = true,
            _ => {}
        }
    }
    true
}

/// Both rows span the same labels, the first column is white-white, the
/// last black-black, and every column between them has opposite colors.
pub fn has_gra3_form(cols: &[Column]) -> bool {
    let (Some(first), Some(last)) = (cols.first(), cols.last()) else {
        return false;
    };
    if cols.len() < 2 || first.complete() != Some(WW) || last.complete() != Some(BB) {
        return false;
    }
    cols[1..cols.len() - 1]
        .iter()
        .all(|c| matches!(c.complete(), Some((a, b)) if a != b))
}

pub fn is_strongly_white(cols: &[Column]) -> bool {
    let complete: Vec<_> = cols.iter().filter_map(Column::complete).collect();
    !complete.contains(&BB)
        && cols.first().is_some_and(|c| c.complete().is_none())
        && (complete.len() < 2 || complete[0] == WW)
}

pub fn is_strongly_black(cols: &[Column]) -> bool {
    let complete: Vec<_> = cols.iter().filter_map(Column::complete).collect();
    !complete.contains(&WW)
        && cols.last().is_some_and(|c| c.complete().is_none())
        && (complete.len() < 2 || complete[complete.len() - 1] == BB)
}

pub fn is_strong(cols: &[Column]) -> bool {
    is_strongly_white(cols) || is_strongly_black(cols)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemePair {
    pub pos: Scheme,
    pub neg: Scheme,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub passes: bool,
    pub all_balanced: bool,
    pub gra3_witness: Option<Overlay>,
    #[serde(serialize_with = "overlay_map")]
    pub overlays: Vec<(Overlay, Vec<Column>)>,
}

fn overlay_map<S: serde::Serializer>(
    v: &[(Overlay, Vec<Column>)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(v.len()))?;
    for (o, cols) in v {
        map.serialize_entry(o.name(), cols)?;
    }
    map.end()
}

impl SchemePair {
    pub fn new(pos: Scheme, neg: Scheme) -> SchemePair {
        SchemePair { pos, neg }
    }

    pub fn overlay(&self, variant: Overlay) -> Vec<Column> {
        match variant {
            Overlay::ST => columns_of(&self.pos, &self.neg),
            Overlay::STStar => columns_of(&self.pos, &self.neg.star()),
            Overlay::SStarT => columns_of(&self.pos.star(), &self.neg),
            Overlay::SStarTStar => columns_of(&self.pos.star(), &self.neg.star()),
        }
    }

    /// Theorem-style necessary condition: all four overlays balanced, or one
    /// of them has the gra3 shape. Refuses pairs with a non-regular set.
    pub fn bale_check(&self) -> Result<PairVerdict> {
        if !self.pos.regular() {
            return Err(Error::NotRegular("positive"));
        }
        if !self.neg.regular() {
            return Err(Error::NotRegular("negative"));
        }
        let overlays: Vec<_> = Overlay::ALL.iter().map(|&o| (o, self.overlay(o))).collect();
        let all_balanced = overlays.iter().all(|(_, c)| is_balanced(c));
        let gra3_witness = overlays.iter().find(|(_, c)| has_gra3_form(c)).map(|(o, _)| *o);
        Ok(PairVerdict {
            passes: all_balanced || gra3_witness.is_some(),
            all_balanced,
            gra3_witness,
            overlays,
        })
    }

    /// Strong in the sense needed for the vanishing theorem: ST and ST* both strong.
    pub fn is_strong_pair(&self) -> bool {
        is_strong(&self.overlay(Overlay::ST)) && is_strong(&self.overlay(Overlay::STStar))
    }
}

/// θ with 0 ≤ θ_i ≤ 2n − 2i + 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RootSequence(pub Vec<u32>);

pub fn root_sequence_bounds(n: usize) -> Vec<u32> {
    (1..=n).map(|i| (2 * n - 2 * i + 1) as u32).collect()
}

/// Lexicographic enumeration.
pub fn enumerate_root_sequences(n: usize) -> impl Iterator<Item = RootSequence> {
    let bounds = root_sequence_bounds(n);
    let mut cur = Some(vec![0u32; n]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = n;
        cur = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < bounds[i] {
                next[i] += 1;
                break Some(next);
            }
            next[i] = 0;
        };
        Some(RootSequence(out))
    })
}

/// ∏ (2n − 2i + 2) = 2ⁿ·n!.
pub fn count_root_sequences(n: usize) -> u128 {
    (1..=n as u128).map(|i| 2 * i).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(v: &[i64]) -> BTreeSet<i64> {
        v.iter().copied().collect()
    }

    fn pos(k: i64, m: i64, set: &[i64]) -> Scheme {
        Scheme::positive(2, k, m, set.iter().copied()).unwrap()
    }

    fn neg(k: i64, m: i64, set: &[i64]) -> Scheme {
        Scheme::negative(2, k, m, set.iter().copied()).unwrap()
    }

    #[test]
    fn census_examples() {
        assert_eq!(regular_sets(2, 1, 3, Color::White), vec![s(&[])]);
        assert_eq!(regular_sets(2, 1, 3, Color::Black), vec![s(&[1, 2])]);
        assert!(regular_sets(2, 1, 4, Color::White).is_empty());
        assert!(regular_sets(2, 1, 4, Color::Black).is_empty());
        assert_eq!(regular_sets(2, 1, 2, Color::White).len(), 2);
        assert_eq!(regular_sets(2, 1, 2, Color::Black).len(), 2);
    }

    #[test]
    fn nothing_regular_on_the_diagonal() {
        for n in 1..=4 {
            for k in 1..=n as i64 {
                let m = psi(n, k);
                for set in all_subsets(k, m) {
                    assert!(!is_regular(n, k, m, &set, Color::White));
                    assert!(!is_regular(n, k, m, &set, Color::Black));
                }
            }
        }
    }

    #[test]
    fn transforms() {
        assert_eq!(pos(1, 3, &[]).complement_dual(), pos(1, 3, &[1, 2]));
        assert_eq!(pos(1, 2, &[]).star(), pos(3, 4, &[3]));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let sch = Scheme::random(3, Sign::Positive, &mut rng);
            assert_eq!(sch.star().star(), sch);
            assert_eq!(sch.complement_dual().complement_dual(), sch);
            assert_eq!(sch.reflect().reflect(), sch);
        }
    }

    #[test]
    fn set_is_clipped() {
        assert_eq!(pos(1, 3, &[0, 1, 3, 7]).set, s(&[1]));
        assert!(Scheme::positive(2, 0, 3, []).is_err());
        assert!(Scheme::positive(2, 3, 5, []).is_err());
    }

    #[test]
    fn renders() {
        assert_eq!(pos(1, 3, &[]).render(Style::Flat).unwrap(), "0:∘ 1:∘ 2:∘ 3:●");
        assert_eq!(
            pos(1, 2, &[]).render(Style::Shifted),
            Err(Error::StyleNotApplicable("shifted".into()))
        );
        let cols = pos(1, 3, &[2]).shifted_columns().unwrap();
        let labels: Vec<_> = cols
            .iter()
            .map(|p| (p.upper.map(|c| c.label), p.lower.map(|c| c.label)))
            .collect();
        assert_eq!(labels, vec![(None, Some(0)), (Some(3), Some(1)), (Some(2), Some(2))]);
        assert_eq!(
            pos(1, 3, &[2]).render(Style::Shifted).unwrap(),
            "    3:● 2:●\n0:∘ 1:∘ 2:●"
        );
        let cols = pos(1, 3, &[]).two_line_columns().unwrap();
        let labels: Vec<_> = cols
            .iter()
            .map(|p| (p.upper.map(|c| c.label), p.lower.map(|c| c.label)))
            .collect();
        assert_eq!(labels, vec![(None, Some(0)), (None, Some(1)), (Some(3), Some(2))]);
    }

    fn recolor(cols: Vec<RowPair>, f: impl Fn(i64, Color) -> Color) -> Vec<RowPair> {
        let g = |c: Option<Cell>| c.map(|c| Cell { label: c.label, color: f(c.label, c.color) });
        cols.into_iter().map(|p| RowPair { upper: g(p.upper), lower: g(p.lower) }).collect()
    }

    fn swap_rows(cols: Vec<RowPair>) -> Vec<RowPair> {
        cols.into_iter().map(|p| RowPair { upper: p.lower, lower: p.upper }).collect()
    }

    fn shape(cols: &[RowPair]) -> Vec<(Option<Color>, Option<Color>)> {
        cols.iter().map(|p| (p.upper.map(|c| c.color), p.lower.map(|c| c.color))).collect()
    }

    #[test]
    fn shifted_pictures_under_reflection() {
        for n in 1..=3usize {
            let nn = n as i64;
            for k in 1..=nn {
                for m in nn + 1..=2 * nn {
                    for set in all_subsets(k, m) {
                        let sch = Scheme::positive(n, k, m, set).unwrap();
                        let base = sch.shifted_columns().unwrap();
                        // reflection: swap rows and recolor both ends
                        let ends = |l: i64, c: Color| if l == k - 1 || l == m { c.flip() } else { c };
                        let want = shape(&swap_rows(recolor(base.clone(), ends)));
                        assert_eq!(shape(&sch.reflect().shifted_columns().unwrap()), want);
                        // star: swap rows and recolor everything
                        let want = shape(&swap_rows(recolor(base, |_, c| c.flip())));
                        assert_eq!(shape(&sch.star().shifted_columns().unwrap()), want);
                    }
                }
            }
        }
    }

    #[test]
    fn overlay_examples() {
        let p = SchemePair::new(pos(1, 2, &[]), neg(3, 4, &[]));
        let st = p.overlay(Overlay::ST);
        let complete: Vec<_> = st.iter().filter(|c| c.complete().is_some()).collect();
        assert_eq!(complete.len(), 1);
        assert_eq!(complete[0].label, 2);
        assert_eq!(complete[0].complete(), Some((Color::Black, Color::White)));
        assert!(is_balanced(&st));
        let sts = p.overlay(Overlay::STStar);
        let want = vec![
            Column { label: 0, top: Some(Color::White), bottom: Some(Color::White) },
            Column { label: 1, top: Some(Color::White), bottom: Some(Color::Black) },
            Column { label: 2, top: Some(Color::Black), bottom: Some(Color::Black) },
        ];
        assert_eq!(sts, want);
        assert!(!is_balanced(&sts));
        assert!(has_gra3_form(&sts));
        let v = p.bale_check().unwrap();
        assert!(v.passes && !v.all_balanced);
        assert_eq!(v.gra3_witness, Some(Overlay::STStar));

        let same = SchemePair::new(pos(1, 2, &[]), neg(1, 2, &[]));
        let st = same.overlay(Overlay::ST);
        assert!(st.iter().all(|c| c.complete().is_some()));
        assert!(!is_balanced(&st) && !has_gra3_form(&st));
        let v = same.bale_check().unwrap();
        assert!(!v.passes);
        assert!(!is_balanced(&same.overlay(Overlay::SStarTStar)));

        let far = SchemePair::new(pos(1, 1, &[]), neg(3, 3, &[]));
        let v = far.bale_check().unwrap();
        assert!(v.passes && v.all_balanced);

        let bad = SchemePair::new(pos(1, 3, &[1]), neg(1, 1, &[]));
        assert_eq!(bad.bale_check().unwrap_err(), Error::NotRegular("positive"));
    }

    #[test]
    fn verdict_json_shape() {
        let p = SchemePair::new(pos(1, 2, &[]), neg(3, 4, &[]));
        let v = serde_json::to_value(p.bale_check().unwrap()).unwrap();
        assert_eq!(v["gra3_witness"], "ST*");
        assert_eq!(v["overlays"]["ST*"][0], json!([0, "w", "w"]));
        assert_eq!(v["overlays"]["ST"][0], json!([0, "w", null]));
        let sch = pos(1, 3, &[2]);
        assert_eq!(Scheme::from_json(2, &sch.to_json()).unwrap(), sch);
        assert_eq!(parse_scheme(2, Sign::Positive, "1,3,").unwrap(), pos(1, 3, &[]));
        assert_eq!(parse_scheme(2, Sign::Positive, "1,3,1,2").unwrap(), pos(1, 3, &[1, 2]));
        assert!(parse_scheme(2, Sign::Positive, "1").is_err());
    }

    #[test]
    fn strong_predicates() {
        let col = |l, t: Option<Color>, b: Option<Color>| Column { label: l, top: t, bottom: b };
        use Color::*;
        let cols = [col(0, Some(White), None), col(1, Some(White), Some(White)), col(2, Some(Black), Some(White))];
        assert!(is_strongly_white(&cols));
        assert!(!is_strongly_black(&cols));
        let cols = [col(0, Some(White), Some(White)), col(1, Some(Black), None)];
        assert!(!is_strongly_white(&cols));
        let cols = [col(0, Some(White), Some(Black)), col(1, Some(Black), Some(Black)), col(2, None, Some(Black))];
        assert!(is_strongly_black(&cols));
        assert!(!is_strongly_white(&cols));
    }

    #[test]
    fn sigma_generator_examples() {
        let g = pos(1, 3, &[]).sigma_generators();
        assert_eq!(g.gens, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(pos(2, 2, &[]).sigma_generators().gens, vec![vec![0, 1]]);
    }

    #[test]
    fn root_sequences() {
        assert_eq!(count_root_sequences(1), 2);
        assert_eq!(count_root_sequences(2), 8);
        assert_eq!(count_root_sequences(3), 48);
        let all: Vec<_> = enumerate_root_sequences(3).collect();
        assert_eq!(all.len(), 48);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], RootSequence(vec![0, 0, 0]));
        assert_eq!(all[47], RootSequence(vec![5, 3, 1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scheme(n: usize) -> impl Strategy<Value = Scheme> {
            let n2 = 2 * n as i64;
            (1..=n2)
                .prop_flat_map(move |k| (Just(k), k..=n2))
                .prop_flat_map(move |(k, m)| {
                    (Just(k), Just(m), proptest::collection::btree_set(k..m.max(k + 1), 0..=(m - k) as usize))
                })
                .prop_map(move |(k, m, set)| Scheme::positive(n, k, m, set).unwrap())
        }

        proptest! {
            #[test]
            fn complement_swaps_colors(sch in scheme(3)) {
                let c = sch.complement_dual();
                prop_assert_eq!(sch.is_regular(Color::White), c.is_regular(Color::Black));
                prop_assert_eq!(sch.is_regular(Color::Black), c.is_regular(Color::White));
            }

            #[test]
            fn rho_maps_overlays(a in scheme(3), b in scheme(3)) {
                let p = SchemePair::new(a, Scheme { sign: Sign::Negative, ..b });
                for o in Overlay::ALL {
                    prop_assert_eq!(rho_columns(3, &p.overlay(o)), p.overlay(o.rho()));
                }
            }
        }
    }
}
