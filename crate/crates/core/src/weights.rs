//! Type-A weight and root combinatorics for `GL(n)`.
//!
//! Weights are written in the fundamental-weight basis `ω₁,…,ωₙ`. The first
//! `n−1` coordinates of a dominant weight are nonnegative; the `ωₙ`
//! coefficient is a free integer (it is central and never affects the
//! orders below).
//!
//! The positive root of height `k` at position `p` is
//! `α_{k,p} = −ω_{p−1} + ω_p + ω_{p+k−1} − ω_{p+k}` with `ω₀ = 0`; in the
//! simple-root basis it is the interval `α_p + ⋯ + α_{p+k−1}`. Even roots
//! are the intervals of even length, and `λ ≥₂ μ` means `λ − μ` is a
//! nonnegative integer combination of them.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dominant weight of `GL(n)`: `λ₁,…,λ_{n−1} ≥ 0`, `λₙ` arbitrary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DominantWeight {
    coords: Vec<i64>,
}

impl DominantWeight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        let n = coords.len();
        if n == 0 {
            return Err(Error::domain("a weight needs rank n >= 1"));
        }
        if let Some(i) = coords[..n - 1].iter().position(|&c| c < 0) {
            return Err(Error::domain(format!(
                "weight {coords:?} is not dominant: coordinate {} is negative",
                i + 1
            )));
        }
        Ok(DominantWeight { coords })
    }

    pub fn zero(n: usize) -> Self {
        DominantWeight { coords: vec![0; n] }
    }

    /// The fundamental weight `ω_k`, `1 ≤ k ≤ n`.
    pub fn fundamental(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::domain(format!("fundamental weight ω_{k} needs 1 <= k <= {n}")));
        }
        let mut coords = vec![0; n];
        coords[k - 1] = 1;
        Ok(DominantWeight { coords })
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// The `i`-th coordinate, 1-based.
    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `λ₁ + ⋯ + λ_{n−1}`.
    pub fn non_central_mass(&self) -> i64 {
        self.coords[..self.rank() - 1].iter().sum()
    }

    pub fn to_vector(&self) -> WeightVector {
        WeightVector { coords: self.coords.clone() }
    }

    /// Shift by `t·ωₙ`.
    pub fn twist(&self, t: i64) -> Self {
        let mut coords = self.coords.clone();
        *coords.last_mut().expect("rank >= 1") += t;
        DominantWeight { coords }
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = Error;

    fn try_from(coords: Vec<i64>) -> Result<Self> {
        DominantWeight::new(coords)
    }
}

impl From<DominantWeight> for Vec<i64> {
    fn from(w: DominantWeight) -> Self {
        w.coords
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Sub for &DominantWeight {
    type Output = WeightVector;

    fn sub(self, rhs: &DominantWeight) -> WeightVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight difference");
        WeightVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

/// An arbitrary integral weight in the `ω` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector {
    coords: Vec<i64>,
}

impl WeightVector {
    pub fn new(coords: Vec<i64>) -> Self {
        WeightVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        WeightVector { coords: vec![0; n] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight sum");
        WeightVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&WeightVector> for &DominantWeight {
    type Output = WeightVector;

    fn sub(self, rhs: &WeightVector) -> WeightVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight difference");
        WeightVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

/// A vector `(x₀, x₁, …, xₙ)` in the lifted space where `ω₀` is an honest
/// basis vector instead of zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LiftedVector {
    coords: Vec<i64>,
}

impl LiftedVector {
    pub fn zero(n: usize) -> Self {
        LiftedVector { coords: vec![0; n + 1] }
    }

    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "lifted vector has length n+1 >= 1");
        LiftedVector { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Drop the `ω₀` coordinate.
    pub fn project(&self) -> WeightVector {
        WeightVector::new(self.coords[1..].to_vec())
    }

    pub fn add_scaled(&mut self, other: &LiftedVector, c: i64) {
        assert_eq!(self.coords.len(), other.coords.len());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += c * b;
        }
    }
}

/// Index `(k, p)` of the positive root of height `k` starting at simple root `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootIndex {
    pub height: usize,
    pub position: usize,
}

impl RootIndex {
    pub fn new(height: usize, position: usize) -> Self {
        RootIndex { height, position }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let RootIndex { height: k, position: p } = *self;
        if k == 0 || n < 2 || k > n - 1 || p == 0 || p > n - k {
            return Err(Error::domain(format!(
                "root index (k={k}, p={p}) out of range for n={n}: need 1 <= k <= n-1, 1 <= p <= n-k"
            )));
        }
        Ok(())
    }

    pub fn is_even(&self) -> bool {
        self.height % 2 == 0
    }
}

impl fmt::Display for RootIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α_{{{},{}}}", self.height, self.position)
    }
}

/// Coordinates `(m₁,…,m_{n−1})` in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimpleRootVector {
    coords: Vec<i64>,
}

impl SimpleRootVector {
    pub fn new(coords: Vec<i64>) -> Self {
        SimpleRootVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        SimpleRootVector { coords: vec![0; n.saturating_sub(1)] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Rank `n` of the ambient `GL(n)`.
    pub fn rank(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&m| m == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&m| m >= 0)
    }

    /// Simple-root coordinates of a single positive root: an interval indicator.
    pub fn of_root(idx: RootIndex, n: usize) -> Result<Self> {
        idx.validate(n)?;
        let mut coords = vec![0; n - 1];
        for c in &mut coords[idx.position - 1..idx.position - 1 + idx.height] {
            *c = 1;
        }
        Ok(SimpleRootVector { coords })
    }
}

/// `ω`-basis coordinates of `α_{k,p}`.
pub fn root_weight_coords(idx: RootIndex, n: usize) -> Result<WeightVector> {
    Ok(lifted_root_coords(idx, n)?.project())
}

/// Lifted coordinates of `α̃_{k,p}`: `−1, +1` at `p−1, p` and `+1, −1` at
/// `p+k−1, p+k`, overlaps summed.
pub fn lifted_root_coords(idx: RootIndex, n: usize) -> Result<LiftedVector> {
    idx.validate(n)?;
    let RootIndex { height: k, position: p } = idx;
    let mut coords = vec![0i64; n + 1];
    coords[p - 1] -= 1;
    coords[p] += 1;
    coords[p + k - 1] += 1;
    coords[p + k] -= 1;
    Ok(LiftedVector { coords })
}

/// All positive roots of `GL(n)`, ordered by height then position.
pub fn positive_roots(n: usize) -> Vec<RootIndex> {
    (1..n)
        .flat_map(|k| (1..=n - k).map(move |p| RootIndex::new(k, p)))
        .collect()
}

/// Positive roots of even height. Empty for `n ≤ 2`.
pub fn even_positive_roots(n: usize) -> Vec<RootIndex> {
    positive_roots(n).into_iter().filter(RootIndex::is_even).collect()
}

/// Solve `x = Σ mᵢ αᵢ` for integer `m`, or `None` if `x` is off the root lattice.
///
/// With `αᵢ = −ω_{i−1} + 2ωᵢ − ω_{i+1}` the system is triangular from the
/// top: `xₙ = −m_{n−1}`, `xⱼ = 2mⱼ − m_{j−1} − m_{j+1}`; the equation at
/// `j = 1` is the consistency check.
pub fn to_simple_root_coords(x: &WeightVector) -> Option<SimpleRootVector> {
    let n = x.rank();
    if n == 0 {
        return None;
    }
    let xs = x.coords();
    if n == 1 {
        return (xs[0] == 0).then(|| SimpleRootVector::new(Vec::new()));
    }
    // m[0] and m[n] are the zero sentinels m₀, mₙ.
    let mut m = vec![0i64; n + 1];
    m[n - 1] = -xs[n - 1];
    for j in (2..n).rev() {
        m[j - 1] = 2 * m[j] - m[j + 1] - xs[j - 1];
    }
    if 2 * m[1] - m[2] != xs[0] {
        return None;
    }
    Some(SimpleRootVector::new(m[1..n].to_vec()))
}

/// Inverse change of basis: `xᵢ = 2mᵢ − m_{i−1} − m_{i+1}`, `xₙ = −m_{n−1}`.
pub fn from_simple_root_coords(m: &SimpleRootVector) -> WeightVector {
    let r = m.coords().len();
    let at = |i: usize| -> i64 {
        if i == 0 || i > r {
            0
        } else {
            m.coords()[i - 1]
        }
    };
    let mut x: Vec<i64> = (1..=r).map(|i| 2 * at(i) - at(i - 1) - at(i + 1)).collect();
    x.push(-at(r));
    WeightVector::new(x)
}

/// Is `m` a sum of even-length intervals of simple roots?
///
/// Scans left to right tracking how many covering intervals have odd and even
/// length so far. An interval may only end at even length, so every odd one
/// must continue into the next position; the remaining slots are filled by
/// continuing even intervals or freshly opened ones, both of which become
/// odd. The split is therefore forced and a single pass decides membership.
pub fn in_even_root_cone(m: &SimpleRootVector) -> bool {
    let mut odd = 0i64;
    for &cover in m.coords() {
        if cover < 0 || cover < odd {
            return false;
        }
        // the `odd` intervals become even here; the rest of `cover` is odd
        odd = cover - odd;
    }
    odd == 0
}

/// Which positive cone defines the partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootOrder {
    /// Combinations of even-height roots (`≥₂`).
    Even,
    /// Combinations of all positive roots (the usual dominance order).
    Full,
}

impl RootOrder {
    pub fn contains(self, m: &SimpleRootVector) -> bool {
        match self {
            RootOrder::Even => in_even_root_cone(m),
            RootOrder::Full => m.is_nonnegative(),
        }
    }
}

/// `μ ≤ λ` in the given order.
pub fn leq(mu: &DominantWeight, lambda: &DominantWeight, order: RootOrder) -> Result<bool> {
    if mu.rank() != lambda.rank() {
        return Err(Error::RankMismatch { expected: lambda.rank(), found: mu.rank() });
    }
    Ok(match to_simple_root_coords(&(lambda - mu)) {
        Some(m) => m.is_nonnegative() && order.contains(&m),
        None => false,
    })
}

/// `λ ≥₂ μ`.
pub fn even_leq(mu: &DominantWeight, lambda: &DominantWeight) -> Result<bool> {
    leq(mu, lambda, RootOrder::Even)
}

/// Closed-form test: `λ` is even minuscule iff it has no two nonzero
/// coordinates of different parity among positions `1..n−1` and
/// `λ₂ + ⋯ + λ_{n−2} ≤ 1`.
pub fn is_even_minuscule(lambda: &DominantWeight) -> bool {
    odd_parity_pair(lambda).is_none() && middle_mass(lambda) <= 1
}

/// Closed-form test for the full dominance order: `λ = aωₙ` or `λ = aωₙ + ω_k`.
pub fn is_minuscule(lambda: &DominantWeight) -> bool {
    lambda.non_central_mass() <= 1
}

/// Dispatch on the order.
pub fn is_minimal(lambda: &DominantWeight, order: RootOrder) -> bool {
    match order {
        RootOrder::Even => is_even_minuscule(lambda),
        RootOrder::Full => is_minuscule(lambda),
    }
}

fn odd_parity_pair(lambda: &DominantWeight) -> Option<(usize, usize)> {
    let n = lambda.rank();
    let support: Vec<usize> = (1..n).filter(|&i| lambda.coord(i) > 0).collect();
    let first_odd = support.iter().copied().find(|i| i % 2 == 1);
    let first_even = support.iter().copied().find(|i| i % 2 == 0);
    match (first_odd, first_even) {
        (Some(a), Some(b)) => Some((a.min(b), a.max(b))),
        _ => None,
    }
}

fn middle_mass(lambda: &DominantWeight) -> i64 {
    let n = lambda.rank();
    if n < 4 {
        return 0;
    }
    (2..=n - 2).map(|i| lambda.coord(i)).sum()
}

/// A certificate that `λ` is not minimal: `λ − Σ roots` is dominant and strictly lower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderWitness {
    pub roots: Vec<RootIndex>,
    pub lower: DominantWeight,
}

impl OrderWitness {
    /// Sum of the witness roots in the `ω` basis.
    pub fn difference(&self) -> WeightVector {
        let n = self.lower.rank();
        self.roots.iter().fold(WeightVector::zero(n), |acc, &r| {
            &acc + &root_weight_coords(r, n).expect("witness roots are valid")
        })
    }
}

/// Explicit lower weight for a non-even-minuscule `λ`, following the two
/// constructions behind the closed form:
///
/// * nonzero `λᵢ, λⱼ` with `j − i` odd: subtract the single even root
///   `α_{j−i+1, i}`;
/// * `λᵢ, λⱼ` of equal parity with `2 ≤ i ≤ j ≤ n−2` (or `λᵢ ≥ 2` when
///   `i = j`): subtract `α_{j−i+2, i} + α_{j−i+2, i−1}`.
pub fn even_minuscule_witness(lambda: &DominantWeight) -> Option<OrderWitness> {
    let n = lambda.rank();
    let roots = if let Some((i, j)) = odd_parity_pair(lambda) {
        vec![RootIndex::new(j - i + 1, i)]
    } else if middle_mass(lambda) >= 2 {
        let middle: Vec<usize> = (2..=n - 2).filter(|&i| lambda.coord(i) > 0).collect();
        let i = middle[0];
        let j = if lambda.coord(i) >= 2 { i } else { middle[1] };
        let k = j - i + 2;
        vec![RootIndex::new(k, i), RootIndex::new(k, i - 1)]
    } else {
        return None;
    };
    lower_by(lambda, roots)
}

/// Same for the full order: subtract `α_{j−i+1,i}` for the first two units of mass.
pub fn minuscule_witness(lambda: &DominantWeight) -> Option<OrderWitness> {
    let n = lambda.rank();
    if lambda.non_central_mass() < 2 {
        return None;
    }
    let support: Vec<usize> = (1..n).filter(|&i| lambda.coord(i) > 0).collect();
    let i = support[0];
    let j = if lambda.coord(i) >= 2 { i } else { support[1] };
    lower_by(lambda, vec![RootIndex::new(j - i + 1, i)])
}

fn lower_by(lambda: &DominantWeight, roots: Vec<RootIndex>) -> Option<OrderWitness> {
    let n = lambda.rank();
    let diff = roots.iter().fold(WeightVector::zero(n), |acc, &r| {
        &acc + &root_weight_coords(r, n).expect("constructed roots are in range")
    });
    let lower = DominantWeight::new((lambda - &diff).into_coords()).ok()?;
    Some(OrderWitness { roots, lower })
}

/// Default search box for the brute-force oracle: `n·(λ₁+⋯+λ_{n−1}) + 2`.
pub fn default_oracle_bound(lambda: &DominantWeight) -> i64 {
    lambda.rank() as i64 * lambda.non_central_mass() + 2
}

/// Brute-force minimality check for `≥₂`: true iff no nonzero
/// `m ∈ {0..bound}^{n−1}` in the even cone leaves `λ − x(m)` dominant.
pub fn is_even_minuscule_oracle(lambda: &DominantWeight, bound: i64) -> bool {
    find_lower_weight(lambda, bound, RootOrder::Even).is_none()
}

/// Brute-force minimality check for the full dominance order.
pub fn is_minuscule_oracle(lambda: &DominantWeight, bound: i64) -> bool {
    find_lower_weight(lambda, bound, RootOrder::Full).is_none()
}

/// Search `{0..bound}^{n−1}` for a nonzero `m` in the order's cone with
/// `λ − x(m)` dominant, where `x(m)` is rebuilt from the Cartan relations.
///
/// The box is walked depth-first one coordinate at a time. A branch is cut
/// only when a dominance inequality is already violated, or when those
/// inequalities force `mₙ > 0` for the implicit boundary `mₙ = 0`; the
/// result is the same as scanning the whole box.
pub fn find_lower_weight(
    lambda: &DominantWeight,
    bound: i64,
    order: RootOrder,
) -> Option<SimpleRootVector> {
    let n = lambda.rank();
    if n < 2 || bound < 1 {
        return None;
    }
    let r = n - 1;
    let lam: Vec<i64> = lambda.coords()[..r].to_vec();
    let mut search = BoxSearch { lam: &lam, bound, order, m: vec![0; r + 2] };
    search.descend(1)
}

struct BoxSearch<'a> {
    // λ₁..λ_{n−1}, 0-based.
    lam: &'a [i64],
    bound: i64,
    order: RootOrder,
    // m[0] = m[n] = 0 sentinels; m[1..n] are the unknowns.
    m: Vec<i64>,
}

impl BoxSearch<'_> {
    fn r(&self) -> usize {
        self.lam.len()
    }

    // (λ − x)ⱼ ≥ 0 with xⱼ = 2mⱼ − m_{j−1} − m_{j+1}.
    fn dominant_at(&self, j: usize) -> bool {
        2 * self.m[j] - self.m[j - 1] - self.m[j + 1] <= self.lam[j - 1]
    }

    // Lower bound on mₙ implied by the inequalities at positions j..r once
    // m_{j−1}, mⱼ are fixed: each slope m_{l+1} − m_l is at least the
    // previous slope minus λ_l.
    fn boundary_reachable(&self, j: usize) -> bool {
        let mut slope = self.m[j] - self.m[j - 1];
        let mut value = self.m[j];
        for l in j..=self.r() {
            slope -= self.lam[l - 1];
            value += slope;
        }
        value <= 0
    }

    fn descend(&mut self, j: usize) -> Option<SimpleRootVector> {
        let r = self.r();
        if j > r {
            if !self.dominant_at(r) {
                return None;
            }
            let m = SimpleRootVector::new(self.m[1..=r].to_vec());
            if m.is_zero() || !self.order.contains(&m) {
                return None;
            }
            return Some(m);
        }
        for v in 0..=self.bound {
            self.m[j] = v;
            if j >= 2 && !self.dominant_at(j - 1) {
                // Raising mⱼ only relaxes the inequality at j−1.
                continue;
            }
            if !self.boundary_reachable(j) {
                // The bound grows with mⱼ whenever the slope does.
                break;
            }
            if let Some(found) = self.descend(j + 1) {
                self.m[j] = 0;
                return Some(found);
            }
        }
        self.m[j] = 0;
        None
    }
}
