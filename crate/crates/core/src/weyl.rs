//! Weyl-group degree data and the numerology of equal-rank homogeneous spaces.
//!
//! All degrees use the half grading: a generator of `H^{2d}(BG)` has degree
//! `d`. For an equal-rank pair `H ⊂ G` the Poincaré polynomial of `G/H` in
//! this grading is `Π_G (1 − q^d) / Π_H (1 − q^d)`, its value at `q = 1` is
//! the Euler characteristic and its value at `q = −1` the signature.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A compact/reductive group, identified up to the Weyl-group data we need.
///
/// `So` and `Spin` carry the matrix size `m`; `Sp` carries its rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Gl(usize),
    Sl(usize),
    So(usize),
    Spin(usize),
    Sp(usize),
    U1,
    F4,
    E6,
    Product(Vec<GroupSpec>),
}

/// Degrees of the fundamental invariants, in listing order.
///
/// For `SO(2n)` the Pfaffian (degree `n`) is listed last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeList(pub Vec<u32>);

impl DegreeList {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn sorted(&self) -> Vec<u32> {
        let mut d = self.0.clone();
        d.sort_unstable();
        d
    }

    pub fn product(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).product()
    }
}

impl GroupSpec {
    pub fn product(factors: Vec<GroupSpec>) -> GroupSpec {
        GroupSpec::Product(factors)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            GroupSpec::Gl(n) | GroupSpec::Sp(n) => *n >= 1,
            GroupSpec::Sl(n) => *n >= 2,
            GroupSpec::So(m) | GroupSpec::Spin(m) => *m >= 2,
            GroupSpec::U1 | GroupSpec::F4 | GroupSpec::E6 => true,
            GroupSpec::Product(fs) => {
                for f in fs {
                    f.validate()?;
                }
                !fs.is_empty()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("unsupported group parameters: {self}")))
        }
    }

    pub fn torus_rank(&self) -> usize {
        match self {
            GroupSpec::Gl(n) | GroupSpec::Sp(n) => *n,
            GroupSpec::Sl(n) => n - 1,
            GroupSpec::So(m) | GroupSpec::Spin(m) => m / 2,
            GroupSpec::U1 => 1,
            GroupSpec::F4 => 4,
            GroupSpec::E6 => 6,
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::torus_rank).sum(),
        }
    }

    /// Factors of a product, flattened; a single group is its own factor.
    pub fn factors(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(fs) => fs.iter().flat_map(GroupSpec::factors).collect(),
            g => vec![g],
        }
    }
}

/// Degrees of the fundamental invariants of `W_G` acting on `𝔱`.
pub fn invariant_degrees(g: &GroupSpec) -> Result<DegreeList> {
    g.validate()?;
    Ok(DegreeList(raw_degrees(g)))
}

fn raw_degrees(g: &GroupSpec) -> Vec<u32> {
    let evens = |n: usize| (1..=n as u32).map(|i| 2 * i).collect::<Vec<_>>();
    match g {
        GroupSpec::Gl(n) => (1..=*n as u32).collect(),
        GroupSpec::Sl(n) => (2..=*n as u32).collect(),
        GroupSpec::Sp(n) => evens(*n),
        GroupSpec::So(m) | GroupSpec::Spin(m) if m % 2 == 1 => evens(m / 2),
        GroupSpec::So(m) | GroupSpec::Spin(m) => {
            let n = m / 2;
            let mut d = evens(n - 1);
            d.push(n as u32);
            d
        }
        GroupSpec::U1 => vec![1],
        GroupSpec::F4 => vec![2, 6, 8, 12],
        GroupSpec::E6 => vec![2, 5, 6, 8, 9, 12],
        GroupSpec::Product(fs) => fs.iter().flat_map(raw_degrees).collect(),
    }
}

/// `|W_G|`, as the product of the invariant degrees.
pub fn weyl_order(g: &GroupSpec) -> Result<u64> {
    Ok(invariant_degrees(g)?.product())
}

/// Textbook order of the Weyl group, independent of the degree tables.
pub fn closed_form_weyl_order(g: &GroupSpec) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    match g {
        GroupSpec::Gl(n) | GroupSpec::Sl(n) => fact(*n),
        GroupSpec::Sp(n) => (1u64 << n) * fact(*n),
        GroupSpec::So(m) | GroupSpec::Spin(m) if m % 2 == 1 => (1u64 << (m / 2)) * fact(m / 2),
        GroupSpec::So(m) | GroupSpec::Spin(m) => (1u64 << (m / 2 - 1)) * fact(m / 2),
        GroupSpec::U1 => 1,
        GroupSpec::F4 => 1152,
        GroupSpec::E6 => 51840,
        GroupSpec::Product(fs) => fs.iter().map(closed_form_weyl_order).product(),
    }
}

/// Check the degree tables against the closed-form Weyl orders for every
/// supported group of rank at most `max_rank`.
pub fn self_check(max_rank: usize) -> Result<()> {
    let mut groups = vec![GroupSpec::U1, GroupSpec::F4, GroupSpec::E6];
    for r in 1..=max_rank {
        groups.push(GroupSpec::Gl(r));
        groups.push(GroupSpec::Sl(r + 1));
        groups.push(GroupSpec::Sp(r));
        groups.push(GroupSpec::So(2 * r));
        groups.push(GroupSpec::So(2 * r + 1));
        groups.push(GroupSpec::Spin(2 * r));
        groups.push(GroupSpec::Spin(2 * r + 1));
    }
    for g in &groups {
        let degrees = invariant_degrees(g)?;
        if degrees.0.len() != g.torus_rank() && !matches!(g, GroupSpec::Sl(_)) {
            return Err(Error::InvariantBreach(format!(
                "{g}: {} invariants for a torus of rank {}",
                degrees.0.len(),
                g.torus_rank()
            )));
        }
        let (table, closed) = (degrees.product(), closed_form_weyl_order(g));
        if table != closed {
            return Err(Error::InvariantBreach(format!(
                "{g}: degree product {table} differs from |W| = {closed}"
            )));
        }
    }
    Ok(())
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gl(n) => write!(f, "GL{n}"),
            GroupSpec::Sl(n) => write!(f, "SL{n}"),
            GroupSpec::So(m) => write!(f, "SO{m}"),
            GroupSpec::Spin(m) => write!(f, "Spin{m}"),
            GroupSpec::Sp(n) => write!(f, "Sp{n}"),
            GroupSpec::U1 => write!(f, "U1"),
            GroupSpec::F4 => write!(f, "F4"),
            GroupSpec::E6 => write!(f, "E6"),
            GroupSpec::Product(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `GL4`, `Spin10xU1`, `SO2xSO4`, ... Factors are joined by `x`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split('x')
            .map(|tok| parse_factor(tok.trim()))
            .collect::<Result<Vec<_>>>()?;
        let g = if factors.len() == 1 {
            factors.into_iter().next().expect("one factor")
        } else {
            GroupSpec::Product(factors)
        };
        g.validate()?;
        Ok(g)
    }
}

fn parse_factor(tok: &str) -> Result<GroupSpec> {
    match tok {
        "U1" => return Ok(GroupSpec::U1),
        "F4" => return Ok(GroupSpec::F4),
        "E6" => return Ok(GroupSpec::E6),
        _ => {}
    }
    let split = tok
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Parse(format!("group factor '{tok}' has no size")))?;
    let (name, digits) = tok.split_at(split);
    let size: usize = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad size in group factor '{tok}'")))?;
    match name {
        "GL" => Ok(GroupSpec::Gl(size)),
        "SL" => Ok(GroupSpec::Sl(size)),
        "SO" => Ok(GroupSpec::So(size)),
        "Spin" => Ok(GroupSpec::Spin(size)),
        "Sp" => Ok(GroupSpec::Sp(size)),
        "U" if size == 1 => Ok(GroupSpec::U1),
        _ => Err(Error::Parse(format!("unknown group factor '{tok}'"))),
    }
}

/// `G/H` for a closed subgroup `H` of maximal rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPair {
    pub ambient: GroupSpec,
    pub subgroup: GroupSpec,
}

impl HomogeneousPair {
    pub fn new(ambient: GroupSpec, subgroup: GroupSpec) -> Result<Self> {
        ambient.validate()?;
        subgroup.validate()?;
        let (ra, rs) = (ambient.torus_rank(), subgroup.torus_rank());
        if ra != rs {
            return Err(Error::domain(format!(
                "{ambient}/{subgroup} is not an equal-rank pair (ranks {ra} and {rs})"
            )));
        }
        Ok(HomogeneousPair { ambient, subgroup })
    }

    /// `Gr_k(Cⁿ) = GL_n / GL_k × GL_{n−k}`.
    pub fn grassmannian(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::domain(format!("Grassmannian Gr_{k}(C^{n}) needs 0 < k < n")));
        }
        HomogeneousPair::new(
            GroupSpec::Gl(n),
            GroupSpec::product(vec![GroupSpec::Gl(k), GroupSpec::Gl(n - k)]),
        )
    }
}

impl fmt::Display for HomogeneousPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.ambient, self.subgroup)
    }
}

impl FromStr for HomogeneousPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (g, h) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("pair '{s}' must look like G/H")))?;
        HomogeneousPair::new(g.trim().parse()?, h.trim().parse()?)
    }
}

/// Integer polynomial in `q`, coefficients by degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Π (1 − q^d)`.
    pub fn one_minus_product(degrees: &[u32]) -> Self {
        degrees.iter().fold(IntPolynomial::one(), |acc, &d| acc.mul_one_minus(d))
    }

    pub fn mul_one_minus(&self, d: u32) -> Self {
        let d = d as usize;
        let mut out = vec![0i64; self.coeffs.len() + d];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + d] -= c;
        }
        IntPolynomial::new(out)
    }

    /// Exact division by `1 − q^d`, or `None` if it leaves a remainder.
    pub fn div_one_minus(&self, d: u32) -> Option<Self> {
        let d = d as usize;
        if self.is_zero() {
            return Some(self.clone());
        }
        if d == 0 || self.coeffs.len() <= d {
            return None;
        }
        // p = Q·(1 − q^d)  ⇔  Q_i = p_i + Q_{i−d}
        let qlen = self.coeffs.len() - d;
        let mut q = vec![0i64; qlen];
        for i in 0..qlen {
            q[i] = self.coeffs[i] + if i >= d { q[i - d] } else { 0 };
        }
        let quotient = IntPolynomial::new(q);
        (quotient.mul_one_minus(d as u32) == *self).then_some(quotient)
    }

    pub fn mul(&self, other: &IntPolynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact quotient by a divisor with leading coefficient `±1`, or `None`
    /// if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<Self> {
        let dlen = divisor.coeffs.len();
        let lead = *divisor.coeffs.last()?;
        if lead.abs() != 1 {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.coeffs.len() < dlen {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![0i64; rem.len() - dlen + 1];
        for i in (0..q.len()).rev() {
            let c = rem[i + dlen - 1] * lead;
            q[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
        rem.iter().all(|&r| r == 0).then(|| IntPolynomial::new(q))
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// True when every nonzero coefficient sits in even degree.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, &c)| i % 2 == 0 || c == 0)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (i, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "q".to_string(),
                (1, m) => format!("{m}q"),
                (e, 1) => format!("q^{e}"),
                (e, m) => format!("{m}q^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// Graded rank of `C[𝔱]^{W_H}` over `C[𝔱]^{W_G}`.
pub fn poincare_polynomial(pair: &HomogeneousPair) -> Result<IntPolynomial> {
    let g = invariant_degrees(&pair.ambient)?;
    let h = invariant_degrees(&pair.subgroup)?;
    let mut p = IntPolynomial::one_minus_product(g.as_slice());
    for &d in h.as_slice() {
        p = p.div_one_minus(d).ok_or_else(|| {
            Error::domain(format!("{pair}: degree quotient is not a polynomial"))
        })?;
    }
    if !p.has_nonnegative_coeffs() {
        return Err(Error::domain(format!("{pair}: quotient {p} has negative coefficients")));
    }
    Ok(p)
}

/// `P(1)`, cross-checked against `|W_G| / |W_H|`.
pub fn euler_characteristic(pair: &HomogeneousPair) -> Result<i64> {
    let chi = poincare_polynomial(pair)?.eval(1);
    let (wg, wh) = (weyl_order(&pair.ambient)?, weyl_order(&pair.subgroup)?);
    if wg % wh != 0 || (wg / wh) as i64 != chi {
        return Err(Error::InvariantBreach(format!(
            "{pair}: P(1) = {chi} but |W_G|/|W_H| = {wg}/{wh}"
        )));
    }
    Ok(chi)
}

/// `P(−1)`: the trace of `(−1)^deg` on the cohomology in the half grading.
pub fn signature(pair: &HomogeneousPair) -> Result<i64> {
    Ok(poincare_polynomial(pair)?.eval(-1))
}

/// `Π_G (1 − ε q^d) / Π_H (1 − ε q^d)` where `ε = −1` on the generators
/// flagged anti-invariant by an involution and `+1` elsewhere. Its value at
/// `q = 1` is the trace of the involution on `H*(G/H)`.
///
/// With every odd degree flagged this is `P(−q)`.
pub fn twisted_poincare_polynomial(
    pair: &HomogeneousPair,
    ambient_anti: &[bool],
    subgroup_anti: &[bool],
) -> Result<IntPolynomial> {
    let factor = |d: u32, anti: bool| {
        let mut c = vec![0i64; d as usize + 1];
        c[0] = 1;
        c[d as usize] = if anti { 1 } else { -1 };
        IntPolynomial::new(c)
    };
    let product = |g: &GroupSpec, anti: &[bool]| -> Result<IntPolynomial> {
        let degrees = invariant_degrees(g)?;
        if anti.len() != degrees.0.len() {
            return Err(Error::RankMismatch { expected: degrees.0.len(), found: anti.len() });
        }
        Ok(degrees
            .0
            .iter()
            .zip(anti)
            .fold(IntPolynomial::one(), |acc, (&d, &a)| acc.mul(&factor(d, a))))
    };
    let num = product(&pair.ambient, ambient_anti)?;
    let den = product(&pair.subgroup, subgroup_anti)?;
    num.div_exact(&den)
        .ok_or_else(|| Error::domain(format!("{pair}: twisted quotient is not a polynomial")))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
