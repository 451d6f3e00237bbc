//! Divisor-level model of the `(1,…,1)` fixed points of the `GL(n)` Hitchin
//! system.
//!
//! A fixed point is recorded by a line bundle `L₀` (only its divisor class
//! `δ₀` matters here) and effective divisors `δ₁,…,δ_{n−1}`, the zero loci
//! of the subdiagonal maps `bᵢ : Lᵢ₋₁ → LᵢK`. Points of the curve are opaque
//! labels: only coincidences and multiplicities are used.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{is_even_minuscule, DominantWeight};
use crate::weyl::{binomial, euler_characteristic, signature, GroupSpec, HomogeneousPair};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PointLabel(String);

impl PointLabel {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::domain("point labels must be nonempty"));
        }
        Ok(PointLabel(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for PointLabel {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        PointLabel::new(s)
    }
}

impl From<PointLabel> for String {
    fn from(p: PointLabel) -> String {
        p.0
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Finite formal sum of points. Zero multiplicities are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "BTreeMap<PointLabel, i64>", into = "BTreeMap<PointLabel, i64>")]
pub struct Divisor {
    support: BTreeMap<PointLabel, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(p: PointLabel, mult: i64) -> Self {
        let mut d = Divisor::zero();
        d.add_point(&p, mult);
        d
    }

    /// Coefficient of `p`.
    pub fn at(&self, p: &PointLabel) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn add_point(&mut self, p: &PointLabel, mult: i64) {
        let v = self.at(p) + mult;
        if v == 0 {
            self.support.remove(p);
        } else {
            self.support.insert(p.clone(), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointLabel, i64)> {
        self.support.iter().map(|(p, &m)| (p, m))
    }

    pub fn points(&self) -> impl Iterator<Item = &PointLabel> {
        self.support.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&m| m > 0)
    }

    /// Effective with all multiplicities at most one.
    pub fn is_reduced(&self) -> bool {
        self.support.values().all(|&m| m == 1)
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }
}

impl From<BTreeMap<PointLabel, i64>> for Divisor {
    fn from(map: BTreeMap<PointLabel, i64>) -> Self {
        Divisor {
            support: map.into_iter().filter(|&(_, m)| m != 0).collect(),
        }
    }
}

impl From<Divisor> for BTreeMap<PointLabel, i64> {
    fn from(d: Divisor) -> Self {
        d.support
    }
}

impl std::ops::Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in rhs.iter() {
            out.add_point(p, m);
        }
        out
    }
}

/// `(δ₀; δ₁,…,δ_{n−1})` with every `δᵢ`, `i ≥ 1`, effective.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTuple", into = "RawTuple")]
pub struct DivisorTuple {
    n: usize,
    delta0: Divisor,
    middle: Vec<Divisor>,
}

#[derive(Serialize, Deserialize)]
struct RawTuple {
    n: usize,
    #[serde(default)]
    delta0: Divisor,
    middle: Vec<Divisor>,
}

impl TryFrom<RawTuple> for DivisorTuple {
    type Error = Error;
    fn try_from(raw: RawTuple) -> Result<Self> {
        DivisorTuple::new(raw.n, raw.delta0, raw.middle)
    }
}

impl From<DivisorTuple> for RawTuple {
    fn from(t: DivisorTuple) -> Self {
        RawTuple { n: t.n, delta0: t.delta0, middle: t.middle }
    }
}

impl DivisorTuple {
    pub fn new(n: usize, delta0: Divisor, middle: Vec<Divisor>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("rank n must be at least 1"));
        }
        if middle.len() != n - 1 {
            return Err(Error::RankMismatch { expected: n - 1, found: middle.len() });
        }
        if let Some(i) = middle.iter().position(|d| !d.is_effective()) {
            return Err(Error::domain(format!("δ_{} is not effective", i + 1)));
        }
        Ok(DivisorTuple { n, delta0, middle })
    }

    pub fn zero(n: usize) -> Result<Self> {
        DivisorTuple::new(n, Divisor::zero(), vec![Divisor::zero(); n.saturating_sub(1)])
    }

    /// Zero tuple with `δᵢ` set for the given `(i, point, multiplicity)` entries.
    pub fn from_entries<'a>(
        n: usize,
        entries: impl IntoIterator<Item = (usize, &'a str, i64)>,
    ) -> Result<Self> {
        let mut t = DivisorTuple::zero(n)?;
        for (i, p, m) in entries {
            let p = PointLabel::new(p)?;
            match i {
                0 => t.delta0.add_point(&p, m),
                i if i < n => t.middle[i - 1].add_point(&p, m),
                _ => return Err(Error::domain(format!("divisor index {i} out of range 0..{n}"))),
            }
        }
        DivisorTuple::new(t.n, t.delta0, t.middle)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn delta0(&self) -> &Divisor {
        &self.delta0
    }

    pub fn middle(&self) -> &[Divisor] {
        &self.middle
    }

    /// `δᵢ` for `0 ≤ i ≤ n−1`.
    pub fn delta(&self, i: usize) -> &Divisor {
        if i == 0 {
            &self.delta0
        } else {
            &self.middle[i - 1]
        }
    }

    /// Every point appearing in some `δᵢ`, sorted.
    pub fn points(&self) -> BTreeSet<PointLabel> {
        std::iter::once(&self.delta0)
            .chain(&self.middle)
            .flat_map(|d| d.points().cloned())
            .collect()
    }

    /// `δ₁ + ⋯ + δ_{n−1}`.
    pub fn middle_sum(&self) -> Divisor {
        self.middle.iter().fold(Divisor::zero(), |acc, d| &acc + d)
    }
}

/// `c ↦ μ(c)` with finite support; zero weights are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWeightMap", into = "RawWeightMap")]
pub struct WeightMap {
    n: usize,
    mu: BTreeMap<PointLabel, DominantWeight>,
}

#[derive(Serialize, Deserialize)]
struct RawWeightMap {
    n: usize,
    mu: BTreeMap<PointLabel, DominantWeight>,
}

impl TryFrom<RawWeightMap> for WeightMap {
    type Error = Error;
    fn try_from(raw: RawWeightMap) -> Result<Self> {
        WeightMap::new(raw.n, raw.mu)
    }
}

impl From<WeightMap> for RawWeightMap {
    fn from(m: WeightMap) -> Self {
        RawWeightMap { n: m.n, mu: m.mu }
    }
}

impl WeightMap {
    pub fn new(n: usize, mu: BTreeMap<PointLabel, DominantWeight>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("rank n must be at least 1"));
        }
        if let Some(w) = mu.values().find(|w| w.rank() != n) {
            return Err(Error::RankMismatch { expected: n, found: w.rank() });
        }
        let mu = mu.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Ok(WeightMap { n, mu })
    }

    pub fn empty(n: usize) -> Result<Self> {
        WeightMap::new(n, BTreeMap::new())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `μ(c)`, zero off the support.
    pub fn at(&self, p: &PointLabel) -> DominantWeight {
        self.mu.get(p).cloned().unwrap_or_else(|| DominantWeight::zero(self.n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointLabel, &DominantWeight)> {
        self.mu.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

/// `μ_δ(c) = δ₀(c)ωₙ + Σ δᵢ(c)ωᵢ`.
pub fn mu_from_delta(delta: &DivisorTuple) -> WeightMap {
    let n = delta.rank();
    let mu = delta
        .points()
        .into_iter()
        .map(|p| {
            let mut coords: Vec<i64> = delta.middle().iter().map(|d| d.at(&p)).collect();
            coords.push(delta.delta0().at(&p));
            let w = DominantWeight::new(coords).expect("middle divisors are effective");
            (p, w)
        })
        .collect();
    WeightMap::new(n, mu).expect("weights have rank n")
}

/// Inverse of [`mu_from_delta`].
pub fn delta_from_mu(mu: &WeightMap) -> DivisorTuple {
    let n = mu.rank();
    let mut delta0 = Divisor::zero();
    let mut middle = vec![Divisor::zero(); n - 1];
    for (p, w) in mu.iter() {
        for (i, d) in middle.iter_mut().enumerate() {
            d.add_point(p, w.coord(i + 1));
        }
        delta0.add_point(p, w.coord(n));
    }
    DivisorTuple::new(n, delta0, middle).expect("dominant weights give effective divisors")
}

/// Which partial sums enter `deg Lᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeConvention {
    /// `deg Lᵢ = deg L₀ + Σ_{j≤i} deg δⱼ − i(2g−2)`, from `δᵢ = div(bᵢ : Lᵢ₋₁ → LᵢK)`.
    #[default]
    Inclusive,
    /// `deg Lᵢ = deg L₀ + Σ_{j<i} deg δⱼ − i(2g−2)`.
    Exclusive,
}

/// Degrees `(d₀,…,d_{n−1})` of the line bundles `L₀,…,L_{n−1}`.
pub fn line_bundle_degrees(
    delta: &DivisorTuple,
    deg_l0: i64,
    genus: i64,
    convention: DegreeConvention,
) -> Result<Vec<i64>> {
    if genus < 2 {
        return Err(Error::domain(format!("genus must be at least 2, got {genus}")));
    }
    let canonical = 2 * genus - 2;
    let shift = match convention {
        DegreeConvention::Inclusive => 0,
        DegreeConvention::Exclusive => 1,
    };
    Ok((0..delta.rank())
        .map(|i| {
            let steps: i64 = (1..=i.saturating_sub(shift)).map(|j| delta.delta(j).degree()).sum();
            deg_l0 + steps - i as i64 * canonical
        })
        .collect())
}

/// Very stable iff `δ₁ + ⋯ + δ_{n−1}` is reduced.
pub fn is_very_stable(delta: &DivisorTuple) -> bool {
    delta.middle_sum().is_reduced()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `δᵢ(c), δⱼ(c) > 0` with `j − i` odd.
    OddParityPair,
    /// Two distinct `δᵢ, δⱼ` with `2 ≤ i < j ≤ n−2` vanish at `c`.
    MiddleMultipleZero,
    /// `δᵢ(c) ≥ 2` for some `2 ≤ i ≤ n−2`.
    AdjacentRepeat,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::OddParityPair => "odd-parity-pair",
            WitnessKind::MiddleMultipleZero => "middle-multiple-zero",
            WitnessKind::AdjacentRepeat => "adjacent-repeat",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub point: PointLabel,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub very_stable: bool,
    pub even_very_stable: bool,
    pub witnesses: Vec<Witness>,
}

/// Divisor-level classification: even very stable iff
///
/// * `δ₂ + ⋯ + δ_{n−2}` is reduced, and
/// * `δᵢ` and `δⱼ` have disjoint supports whenever `j − i` is odd.
///
/// Every violation is reported, ordered by point, then indices, then kind.
pub fn classify(delta: &DivisorTuple) -> ClassificationReport {
    let n = delta.rank();
    let mut witnesses = Vec::new();
    for p in delta.middle_sum().points() {
        let at = |i: usize| delta.delta(i).at(p);
        let support: Vec<usize> = (1..n).filter(|&i| at(i) > 0).collect();
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                if (j - i) % 2 == 1 {
                    witnesses.push(Witness {
                        kind: WitnessKind::OddParityPair,
                        point: p.clone(),
                        indices: vec![i, j],
                    });
                }
            }
        }
        let middle: Vec<usize> = support.iter().copied().filter(|&i| i >= 2 && i + 2 <= n).collect();
        for &i in &middle {
            if at(i) >= 2 {
                witnesses.push(Witness {
                    kind: WitnessKind::AdjacentRepeat,
                    point: p.clone(),
                    indices: vec![i],
                });
            }
        }
        if middle.len() >= 2 {
            witnesses.push(Witness {
                kind: WitnessKind::MiddleMultipleZero,
                point: p.clone(),
                indices: vec![middle[0], middle[1]],
            });
        }
    }
    witnesses.sort_by(|a, b| (&a.point, &a.indices, a.kind).cmp(&(&b.point, &b.indices, b.kind)));
    ClassificationReport {
        very_stable: is_very_stable(delta),
        even_very_stable: witnesses.is_empty(),
        witnesses,
    }
}

/// Pointwise test through the weights: every `μ_δ(c)` is even minuscule.
pub fn classify_via_weights(delta: &DivisorTuple) -> bool {
    mu_from_delta(delta).iter().all(|(_, w)| is_even_minuscule(w))
}

/// Elementary Hecke modification at `point` in direction `ω_index`.
///
/// `inverse` is only meaningful for `index = n`, the twist by `O(∓c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeckeOp {
    pub point: PointLabel,
    pub index: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverse: bool,
}

impl HeckeOp {
    pub fn new(point: PointLabel, index: usize) -> Self {
        HeckeOp { point, index, inverse: false }
    }
}

impl fmt::Display for HeckeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.inverse { "-" } else { "" };
        write!(f, "({}, {sign}{})", self.point, self.index)
    }
}

/// Elementary operations reaching `δ_μ` from the zero tuple, ordered by point
/// and then index; `ωₙ` steps are inverse when `μ(c)ₙ < 0`.
pub fn hecke_path(mu: &WeightMap) -> Vec<HeckeOp> {
    let n = mu.rank();
    let mut ops = Vec::new();
    for (p, w) in mu.iter() {
        for k in 1..=n {
            let c = w.coord(k);
            let op = HeckeOp { point: p.clone(), index: k, inverse: c < 0 };
            ops.extend(std::iter::repeat(op).take(c.unsigned_abs() as usize));
        }
    }
    ops
}

pub fn apply_hecke(delta: &DivisorTuple, op: &HeckeOp) -> Result<DivisorTuple> {
    let n = delta.rank();
    if op.index == 0 || op.index > n {
        return Err(Error::domain(format!("Hecke index {} out of range 1..={n}", op.index)));
    }
    if op.inverse && op.index != n {
        return Err(Error::domain(format!(
            "only the central direction ω_{n} can be inverted, got {}",
            op.index
        )));
    }
    let mut out = delta.clone();
    let step = if op.inverse { -1 } else { 1 };
    if op.index == n {
        out.delta0.add_point(&op.point, step);
    } else {
        out.middle[op.index - 1].add_point(&op.point, step);
    }
    Ok(out)
}

/// Degree of the Hitchin map on the upward flow of `ω_k`: the rank of
/// `H*_{GL_k×GL_{n−k}}` over `H*_{GL_n}`, i.e. `χ(Gr_k(Cⁿ))`.
pub fn hitchin_multiplicity(n: usize, k: usize) -> Result<u64> {
    let chi = euler_characteristic(&HomogeneousPair::grassmannian(n, k)?)?;
    let expected = binomial(n as u64, k as u64);
    if chi as u64 != expected {
        return Err(Error::InvariantBreach(format!(
            "χ(Gr_{k}(C^{n})) = {chi} but C({n},{k}) = {expected}"
        )));
    }
    Ok(expected)
}

/// Degree of the restricted Hitchin map on the even upward flow of `ω_{2k}`
/// in rank `2n`: the signature of `Gr_{2k}(C^{2n})`, which must equal
/// `χ(Gr_k(Hⁿ)) = C(n,k)`.
pub fn even_hitchin_multiplicity(n2: usize, k2: usize) -> Result<u64> {
    if n2 % 2 != 0 || k2 % 2 != 0 {
        return Err(Error::domain(format!("rank {n2} and index {k2} must both be even")));
    }
    if k2 == 0 || k2 >= n2 {
        return Err(Error::domain(format!("index {k2} must satisfy 0 < k < {n2}")));
    }
    let pair = HomogeneousPair::new(
        GroupSpec::Gl(n2),
        GroupSpec::product(vec![GroupSpec::Gl(k2), GroupSpec::Gl(n2 - k2)]),
    )?;
    let sig = signature(&pair)?;
    let expected = binomial(n2 as u64 / 2, k2 as u64 / 2);
    if sig < 0 || sig as u64 != expected {
        return Err(Error::InvariantBreach(format!(
            "signature of {pair} is {sig} but C({},{}) = {expected}",
            n2 / 2,
            k2 / 2
        )));
    }
    Ok(expected)
}
