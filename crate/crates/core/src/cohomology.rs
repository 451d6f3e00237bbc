//! Graded presentations of equivariant cohomology rings and their
//! θ-coinvariant quotients.
//!
//! Gradings are halved throughout, so `H^{2d}` sits in degree `d`. Hilbert
//! series are kept in the form `Π (1 − q^a) / Π (1 − q^b)`, and an exact
//! linear-algebra oracle recomputes graded dimensions of a presentation
//! independently of any series formula.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{
    invariant_degrees, signature, twisted_poincare_polynomial, GroupSpec, HomogeneousPair,
    IntPolynomial,
};

pub const DEFAULT_MONOMIAL_CAP: usize = 20_000;
pub const MONOMIAL_CAP_ENV: &str = "EVENFLOWS_MONOMIAL_CAP";

/// Per-degree monomial cap for the oracle, overridable through the environment.
pub fn monomial_cap() -> usize {
    std::env::var(MONOMIAL_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MONOMIAL_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Variable { name: name.into(), degree }
    }
}

/// Polynomial with exact rational coefficients in a fixed list of graded variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<Variable>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<Variable>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        vars: Vec<Variable>,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(vars);
        for (exps, c) in terms {
            p.add_term(exps, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) -> Result<()> {
        if exps.len() != self.vars.len() {
            return Err(Error::RankMismatch { expected: self.vars.len(), found: exps.len() });
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.vars).map(|(&e, v)| e * v.degree).sum()
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| self.monomial_degree(e));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Set the flagged variables to zero and drop them from the variable list.
    pub fn substitute_zero(&self, killed: &[bool]) -> MultiPoly {
        let keep = |v: &[u32]| -> Vec<u32> {
            v.iter().zip(killed).filter(|(_, &k)| !k).map(|(&e, _)| e).collect()
        };
        let vars = self
            .vars
            .iter()
            .zip(killed)
            .filter(|(_, &k)| !k)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().zip(killed).all(|(&x, &k)| !k || x == 0))
            .map(|(e, c)| (keep(e), c.clone()))
            .collect();
        MultiPoly { vars, terms }
    }

    /// Terms scaled by the least common denominator, so all coefficients are integers.
    pub fn integer_terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer() * (&lcm / c.denom())))
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = exps
                .iter()
                .zip(&self.vars)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.name.clone() } else { format!("{}^{e}", v.name) })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `C[generators] / (relations)`, as an algebra over the subring generated by `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPresentation {
    pub label: String,
    generators: Vec<Variable>,
    base: Vec<String>,
    relations: Vec<MultiPoly>,
}

impl GradedPresentation {
    pub fn new(
        label: impl Into<String>,
        generators: Vec<Variable>,
        base: Vec<String>,
        relations: Vec<MultiPoly>,
    ) -> Result<Self> {
        if let Some(b) = base.iter().find(|b| !generators.iter().any(|g| &g.name == *b)) {
            return Err(Error::domain(format!("base generator {b} is not a generator")));
        }
        if let Some(g) = generators.iter().find(|g| g.degree == 0) {
            return Err(Error::domain(format!("generator {} has degree 0", g.name)));
        }
        for r in &relations {
            if r.vars() != generators.as_slice() {
                return Err(Error::domain("relation variables differ from the generators"));
            }
            if !r.is_zero() && r.homogeneous_degree().is_none() {
                return Err(Error::domain(format!("relation {r} is not homogeneous")));
            }
        }
        Ok(GradedPresentation { label: label.into(), generators, base, relations })
    }

    pub fn generators(&self) -> &[Variable] {
        &self.generators
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations.iter().filter_map(MultiPoly::homogeneous_degree).collect()
    }

    /// Quotient by the flagged generators: they are set to zero everywhere
    /// and relations that vanish identically are dropped.
    pub fn kill(&self, killed: &[bool], label: impl Into<String>) -> Result<Self> {
        if killed.len() != self.generators.len() {
            return Err(Error::RankMismatch { expected: self.generators.len(), found: killed.len() });
        }
        let generators: Vec<Variable> = self
            .generators
            .iter()
            .zip(killed)
            .filter(|(_, &k)| !k)
            .map(|(g, _)| g.clone())
            .collect();
        let base = self
            .base
            .iter()
            .filter(|b| generators.iter().any(|g| &g.name == *b))
            .cloned()
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| r.substitute_zero(killed))
            .filter(|r| !r.is_zero())
            .collect();
        GradedPresentation::new(label, generators, base, relations)
    }
}

/// `H*_{GL_n}(Gr_k(Cⁿ))`: generators `e₁..e_k`, `f₁..f_{n−k}` and base
/// `c₁..cₙ`, with relations the coefficients of
/// `(t^k + Σ eᵢ t^{k−i})(t^{n−k} + Σ fⱼ t^{n−k−j}) − (tⁿ + Σ c_l t^{n−l})`.
pub fn grassmannian_presentation(n: usize, k: usize) -> Result<GradedPresentation> {
    if k == 0 || k >= n {
        return Err(Error::domain(format!("Gr_{k}(C^{n}) needs 0 < k < n")));
    }
    let m = n - k;
    let mut vars = Vec::with_capacity(2 * n);
    vars.extend((1..=k).map(|i| Variable::new(format!("e{i}"), i as u32)));
    vars.extend((1..=m).map(|j| Variable::new(format!("f{j}"), j as u32)));
    vars.extend((1..=n).map(|l| Variable::new(format!("c{l}"), l as u32)));
    let base = (1..=n).map(|l| format!("c{l}")).collect();
    let unit = |idx: Option<usize>, other: Option<usize>| {
        let mut e = vec![0u32; 2 * n];
        for i in [idx, other].into_iter().flatten() {
            e[i] += 1;
        }
        e
    };
    let mut relations = Vec::with_capacity(n);
    for j in 1..=n {
        let mut r = MultiPoly::zero(vars.clone());
        for a in 0..=j.min(k) {
            let b = j - a;
            if b > m {
                continue;
            }
            let e = (a > 0).then(|| a - 1);
            let f = (b > 0).then(|| k + b - 1);
            r.add_term(unit(e, f), BigRational::one())?;
        }
        r.add_term(unit(Some(k + m + j - 1), None), -BigRational::one())?;
        relations.push(r);
    }
    GradedPresentation::new(format!("H*_GL{n}(Gr_{k}(C^{n}))"), vars, base, relations)
}

/// Coinvariants of the involution acting by `(−1)^deg`: every odd-degree
/// generator is killed.
pub fn theta_coinvariant(pres: &GradedPresentation) -> Result<GradedPresentation> {
    let killed: Vec<bool> = pres.generators.iter().map(|g| g.degree % 2 == 1).collect();
    pres.kill(&killed, format!("{} / θ", pres.label))
}

/// `Π (1 − q^a) / Π (1 − q^b)` in lowest terms.
///
/// Since `1 − q^d = −Π_{e | d} Φ_e(q)` and divisibility is a unitriangular
/// incidence, two fractions with disjoint exponent multisets are equal only
/// if they are identical; structural equality is equality of series.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSeries {
    num: Vec<u32>,
    den: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(mut num: Vec<u32>, mut den: Vec<u32>) -> Result<Self> {
        if num.iter().chain(&den).any(|&d| d == 0) {
            return Err(Error::domain("Hilbert series exponents must be positive"));
        }
        num.sort_unstable();
        den.sort_unstable();
        let (mut i, mut j) = (0, 0);
        let (mut n_out, mut d_out) = (Vec::new(), Vec::new());
        while i < num.len() || j < den.len() {
            match (num.get(i), den.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    n_out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) | (None, Some(b)) => {
                    d_out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    n_out.push(*a);
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(HilbertSeries { num: n_out, den: d_out })
    }

    pub fn one() -> Self {
        HilbertSeries { num: vec![], den: vec![] }
    }

    /// `1 / Π (1 − q^d)`: a polynomial ring on generators of the given degrees.
    pub fn polynomial_ring(degrees: &[u32]) -> Result<Self> {
        HilbertSeries::new(vec![], degrees.to_vec())
    }

    pub fn num(&self) -> &[u32] {
        &self.num
    }

    pub fn den(&self) -> &[u32] {
        &self.den
    }

    pub fn mul(&self, other: &HilbertSeries) -> HilbertSeries {
        let num = self.num.iter().chain(&other.num).copied().collect();
        let den = self.den.iter().chain(&other.den).copied().collect();
        HilbertSeries::new(num, den).expect("exponents stay positive")
    }

    pub fn div(&self, other: &HilbertSeries) -> HilbertSeries {
        let inverse = HilbertSeries { num: other.den.clone(), den: other.num.clone() };
        self.mul(&inverse)
    }

    /// Power-series coefficients of degrees `0..=max_degree`.
    pub fn coefficients(&self, max_degree: usize) -> Vec<i64> {
        let mut c = vec![0i64; max_degree + 1];
        c[0] = 1;
        for &d in &self.num {
            let d = d as usize;
            for i in (d..=max_degree).rev() {
                c[i] -= c[i - d];
            }
        }
        for &d in &self.den {
            let d = d as usize;
            for i in d..=max_degree {
                c[i] += c[i - d];
            }
        }
        c
    }

    /// The series as a polynomial, if it is one.
    pub fn as_polynomial(&self) -> Option<IntPolynomial> {
        let num = IntPolynomial::one_minus_product(&self.num);
        let den = IntPolynomial::one_minus_product(&self.den);
        num.div_exact(&den)
    }

    /// `self / base` as a polynomial: the graded rank of a free module over `base`.
    pub fn ratio_polynomial(&self, base: &HilbertSeries) -> Option<IntPolynomial> {
        self.div(base).as_polynomial()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let product = |ds: &[u32]| -> String {
            if ds.is_empty() {
                return "1".to_string();
            }
            ds.iter()
                .map(|&d| if d == 1 { "(1-q)".to_string() } else { format!("(1-q^{d})") })
                .collect()
        };
        if self.den.is_empty() {
            write!(f, "{}", product(&self.num))
        } else {
            write!(f, "{}/{}", product(&self.num), product(&self.den))
        }
    }
}

/// `Π_{relations} (1 − q^deg) / Π_{generators} (1 − q^deg)`, valid when the
/// relations form a regular sequence.
pub fn hilbert_series_ci(pres: &GradedPresentation) -> Result<HilbertSeries> {
    if pres.relations.len() > pres.generators.len() {
        return Err(Error::domain(format!(
            "{}: {} relations exceed {} generators",
            pres.label,
            pres.relations.len(),
            pres.generators.len()
        )));
    }
    HilbertSeries::new(pres.relation_degrees(), pres.generator_degrees())
}

/// Graded dimensions of `pres` in degrees `0..=max_degree` by exact row
/// reduction, with the monomial cap from [`monomial_cap`].
pub fn graded_dims_oracle(pres: &GradedPresentation, max_degree: u32) -> Result<Vec<u64>> {
    graded_dims_oracle_with_cap(pres, max_degree, monomial_cap())
}

/// In each degree `d`: `#monomials − rank span{ m·r : deg(m·r) = d }`.
pub fn graded_dims_oracle_with_cap(
    pres: &GradedPresentation,
    max_degree: u32,
    cap: usize,
) -> Result<Vec<u64>> {
    let degrees = pres.generator_degrees();
    let relations: Vec<(u32, Vec<(Vec<u32>, BigInt)>)> = pres
        .relations
        .iter()
        .filter_map(|r| Some((r.homogeneous_degree()?, r.integer_terms())))
        .collect();
    let mut monomials: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut dims = Vec::with_capacity(max_degree as usize + 1);
    for d in 0..=max_degree {
        let monos = monomials_of_degree(&degrees, d, cap)?;
        let column: HashMap<&[u32], usize> =
            monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut elim = Eliminator::default();
        for (rd, terms) in &relations {
            if *rd > d {
                continue;
            }
            for m in &monomials[(d - rd) as usize] {
                let mut row: Vec<(usize, BigInt)> = terms
                    .iter()
                    .map(|(e, c)| {
                        let shifted: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                        (column[shifted.as_slice()], c.clone())
                    })
                    .collect();
                row.sort_by_key(|&(col, _)| col);
                elim.insert(row);
            }
        }
        dims.push((monos.len() - elim.rank()) as u64);
        monomials.push(monos);
    }
    Ok(dims)
}

/// Exponent vectors of weighted degree `d`, in lexicographic order.
fn monomials_of_degree(degrees: &[u32], d: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
    fn go(degrees: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) -> bool {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
                return out.len() <= cap;
            }
            return true;
        }
        for e in (0..=left / degrees[i]).rev() {
            cur[i] = e;
            if !go(degrees, i + 1, left - e * degrees[i], cur, out, cap) {
                return false;
            }
        }
        cur[i] = 0;
        true
    }
    let mut out = Vec::new();
    let mut cur = vec![0; degrees.len()];
    if !go(degrees, 0, d, &mut cur, &mut out, cap) {
        return Err(Error::ResourceCap {
            what: format!("monomials of degree {d}"),
            needed: out.len(),
            cap,
        });
    }
    Ok(out)
}

/// Fraction-free sparse elimination over `Z`; rows are sorted by column.
#[derive(Default)]
struct Eliminator {
    pivots: HashMap<usize, Vec<(usize, BigInt)>>,
}

impl Eliminator {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: Vec<(usize, BigInt)>) {
        loop {
            let Some((lead_col, lead)) = row.first().cloned() else { return };
            let Some(pivot) = self.pivots.get(&lead_col) else {
                normalize(&mut row);
                self.pivots.insert(lead_col, row);
                return;
            };
            let g = lead.gcd(&pivot[0].1);
            let (a, b) = (&pivot[0].1 / &g, &lead / &g);
            row = combine(&row, &a, pivot, &b);
            normalize(&mut row);
        }
    }
}

/// `a·x − b·y` for sparse rows.
fn combine(x: &[(usize, BigInt)], a: &BigInt, y: &[(usize, BigInt)], b: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, v) = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (*cx, a * vx - b * vy)
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, a * vx)
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, a * vx)
            }
            (_, Some((cy, vy))) => {
                j += 1;
                (*cy, -(b * vy))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn normalize(row: &mut [(usize, BigInt)]) {
    let Some(first) = row.first() else { return };
    let mut g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// The five homogeneous-space settings whose θ-coinvariant rings are compared
/// with compact equivariant cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramCase {
    /// `Gr_k(Hⁿ)`, compared with `Gr_{2k}(C^{2n})`.
    Quaternionic { n: usize, k: usize },
    /// `S^{4n}`, compared with the quadric `SO(4n+2)/SO(2)×SO(4n)`.
    Sphere { n: usize },
    /// `F₄/Spin(9)`, compared with `E₆/Spin(10)×U(1)`.
    Cayley,
    /// Real Grassmannian of `2k`-planes in `R^{2n+1}`, compared with `Gr_{2k}(C^{2n+1})`.
    RealGrassmannian { n: usize, k: usize },
    /// `SO(4n)/SO(2)×SO(4n−2)` under the involution of the real form `SO(2n+1, 2n−1)`.
    So4n { n: usize },
}

impl DiagramCase {
    pub fn new(name: &str, n: Option<usize>, k: Option<usize>) -> Result<Self> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::domain(format!("case {name} needs --{what}")))
        };
        let case = match name {
            "quaternionic" => DiagramCase::Quaternionic { n: need(n, "n")?, k: need(k, "k")? },
            "sphere" => DiagramCase::Sphere { n: need(n, "n")? },
            "cayley" => DiagramCase::Cayley,
            "real_grassmannian" | "real-grassmannian" => {
                DiagramCase::RealGrassmannian { n: need(n, "n")?, k: need(k, "k")? }
            }
            "so4n" => DiagramCase::So4n { n: need(n, "n")? },
            _ => return Err(Error::Parse(format!("unknown diagram case '{name}'"))),
        };
        case.validate()?;
        Ok(case)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DiagramCase::Quaternionic { n, k } => k > 0 && k < n,
            DiagramCase::Sphere { n } | DiagramCase::So4n { n } => n >= 1,
            DiagramCase::Cayley => true,
            DiagramCase::RealGrassmannian { n, k } => k >= 1 && k <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("parameters {:?} out of range for case {}", self.params(), self.name())))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DiagramCase::Quaternionic { .. } => "quaternionic",
            DiagramCase::Sphere { .. } => "sphere",
            DiagramCase::Cayley => "cayley",
            DiagramCase::RealGrassmannian { .. } => "real_grassmannian",
            DiagramCase::So4n { .. } => "so4n",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            DiagramCase::Quaternionic { n, k } | DiagramCase::RealGrassmannian { n, k } => vec![n, k],
            DiagramCase::Sphere { n } | DiagramCase::So4n { n } => vec![n],
            DiagramCase::Cayley => vec![],
        }
    }

    /// How firmly the identity is established: `established`, `conjectural` or `expected`.
    pub fn status(&self) -> &'static str {
        match self {
            DiagramCase::RealGrassmannian { .. } => "conjectural",
            DiagramCase::So4n { .. } => "expected",
            _ => "established",
        }
    }

    /// Every case at the parameter ranges checked by default.
    pub fn standard_suite() -> Vec<DiagramCase> {
        let mut out = Vec::new();
        for n in 2..=4 {
            for k in 1..n {
                out.push(DiagramCase::Quaternionic { n, k });
            }
        }
        out.extend((1..=3).map(|n| DiagramCase::Sphere { n }));
        out.push(DiagramCase::Cayley);
        for n in 1..=4 {
            for k in 1..=n {
                out.push(DiagramCase::RealGrassmannian { n, k });
            }
        }
        out.extend((1..=3).map(|n| DiagramCase::So4n { n }));
        out
    }

    /// The complex pair `G/H` and the generators of `H*_G` and `H*_H` that the
    /// involution negates.
    pub fn complex_side(&self) -> Result<(HomogeneousPair, Vec<bool>, Vec<bool>)> {
        self.validate()?;
        let gl_pair = |n: usize, k: usize| {
            HomogeneousPair::new(GroupSpec::Gl(n), GroupSpec::product(vec![GroupSpec::Gl(k), GroupSpec::Gl(n - k)]))
        };
        let pair = match *self {
            DiagramCase::Quaternionic { n, k } => gl_pair(2 * n, 2 * k)?,
            DiagramCase::RealGrassmannian { n, k } => gl_pair(2 * n + 1, 2 * k)?,
            DiagramCase::Sphere { n } => HomogeneousPair::new(
                GroupSpec::So(4 * n + 2),
                GroupSpec::product(vec![GroupSpec::So(2), GroupSpec::So(4 * n)]),
            )?,
            DiagramCase::Cayley => HomogeneousPair::new(
                GroupSpec::E6,
                GroupSpec::product(vec![GroupSpec::Spin(10), GroupSpec::U1]),
            )?,
            DiagramCase::So4n { n } => HomogeneousPair::new(
                GroupSpec::So(4 * n),
                GroupSpec::product(vec![GroupSpec::So(2), GroupSpec::So(4 * n - 2)]),
            )?,
        };
        let g = invariant_degrees(&pair.ambient)?;
        let h = invariant_degrees(&pair.subgroup)?;
        let (g_anti, h_anti) = match self {
            // Pfaffian of SO(4n) and the SO(2) generator.
            DiagramCase::So4n { .. } => {
                let mut ga = vec![false; g.0.len()];
                *ga.last_mut().expect("nonempty") = true;
                let mut ha = vec![false; h.0.len()];
                ha[0] = true;
                (ga, ha)
            }
            _ => (
                g.0.iter().map(|d| d % 2 == 1).collect(),
                h.0.iter().map(|d| d % 2 == 1).collect(),
            ),
        };
        Ok((pair, g_anti, h_anti))
    }
}

impl fmt::Display for DiagramCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            write!(f, "{}", self.name())
        } else {
            let p: Vec<String> = p.iter().map(ToString::to_string).collect();
            write!(f, "{}({})", self.name(), p.join(","))
        }
    }
}

fn surviving(degrees: &[u32], anti: &[bool]) -> Vec<u32> {
    degrees.iter().zip(anti).filter(|(_, &a)| !a).map(|(&d, _)| d).collect()
}

fn degrees_of(groups: &[GroupSpec]) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for g in groups {
        out.extend(invariant_degrees(g)?.0);
    }
    Ok(out)
}

/// Series of the θ-coinvariant algebra `(H*_G(G/H))_θ = (H*_H)_θ`: a
/// polynomial ring on the generators of `H*_H` the involution fixes.
pub fn coinvariant_side_series(case: &DiagramCase) -> Result<HilbertSeries> {
    let (pair, _, h_anti) = case.complex_side()?;
    HilbertSeries::polynomial_ring(&surviving(invariant_degrees(&pair.subgroup)?.as_slice(), &h_anti))
}

/// Series of `(H*_G)_θ`, the base of the coinvariant algebra.
pub fn coinvariant_base_series(case: &DiagramCase) -> Result<HilbertSeries> {
    let (pair, g_anti, _) = case.complex_side()?;
    HilbertSeries::polynomial_ring(&surviving(invariant_degrees(&pair.ambient)?.as_slice(), &g_anti))
}

/// Series of the compact-side equivariant cohomology, from the degree data
/// of the compact groups alone.
pub fn compact_side_series(case: &DiagramCase) -> Result<HilbertSeries> {
    case.validate()?;
    match *case {
        DiagramCase::Quaternionic { n, k } => {
            HilbertSeries::polynomial_ring(&degrees_of(&[GroupSpec::Sp(k), GroupSpec::Sp(n - k)])?)
        }
        // (1 + q^{2n}) / Π_{B_{2n}}
        DiagramCase::Sphere { n } => {
            let mut den = degrees_of(&[GroupSpec::So(4 * n + 1)])?;
            den.push(2 * n as u32);
            HilbertSeries::new(vec![4 * n as u32], den)
        }
        DiagramCase::Cayley => HilbertSeries::polynomial_ring(&degrees_of(&[GroupSpec::Spin(9)])?),
        DiagramCase::RealGrassmannian { n, k } => {
            let doubled: Vec<u32> = (1..=k).chain(1..=n - k).map(|i| 2 * i as u32).collect();
            HilbertSeries::polynomial_ring(&doubled)
        }
        DiagramCase::So4n { n } => {
            HilbertSeries::polynomial_ring(&degrees_of(&[GroupSpec::So(4 * n - 2)])?)
        }
    }
}

/// Series of the compact-side base `H*_{G'}`.
pub fn compact_base_series(case: &DiagramCase) -> Result<HilbertSeries> {
    case.validate()?;
    let g = match *case {
        DiagramCase::Quaternionic { n, .. } => GroupSpec::Sp(n),
        DiagramCase::Sphere { n } => GroupSpec::So(4 * n + 1),
        DiagramCase::Cayley => GroupSpec::F4,
        DiagramCase::RealGrassmannian { n, .. } => GroupSpec::Spin(2 * n + 1),
        DiagramCase::So4n { n } => GroupSpec::Spin(4 * n - 1),
    };
    HilbertSeries::polynomial_ring(invariant_degrees(&g)?.as_slice())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub case: String,
    pub params: Vec<usize>,
    pub coinvariant_series: HilbertSeries,
    pub compact_series: HilbertSeries,
    pub equal: bool,
    pub rank: i64,
    pub signature: i64,
    pub oracle_checked_to_degree: Option<u32>,
    pub pair: String,
    pub theta_trace: i64,
    pub base_series: HilbertSeries,
    pub compact_base_series: HilbertSeries,
    pub base_equal: bool,
    pub status: String,
}

/// Compare both sides of the diagram for `case`.
///
/// `rank` is the rank of the coinvariant algebra over its base; it must equal
/// the trace of the involution on `H*(G/H)`, which for `θ = (−1)^deg` is the
/// signature. Quaternionic cases also rebuild the coinvariant ring from the
/// explicit Grassmannian presentation and run the dimension oracle up to
/// `oracle_degree`.
pub fn verify_diagram(case: &DiagramCase, oracle_degree: u32) -> Result<DiagramReport> {
    let (pair, g_anti, h_anti) = case.complex_side()?;
    let coinvariant = coinvariant_side_series(case)?;
    let compact = compact_side_series(case)?;
    let base = coinvariant_base_series(case)?;
    let compact_base = compact_base_series(case)?;

    let rank_poly = coinvariant.ratio_polynomial(&base).ok_or_else(|| {
        Error::InvariantBreach(format!("{case}: {coinvariant} is not finite free over {base}"))
    })?;
    let rank = rank_poly.eval(1);
    let theta_trace = twisted_poincare_polynomial(&pair, &g_anti, &h_anti)?.eval(1);
    if rank != theta_trace {
        return Err(Error::InvariantBreach(format!(
            "{case}: coinvariant rank {rank} differs from the trace {theta_trace} of θ"
        )));
    }

    let mut oracle_checked_to_degree = None;
    if let DiagramCase::Quaternionic { n, k } = *case {
        let pres = theta_coinvariant(&grassmannian_presentation(2 * n, 2 * k)?)?;
        let ci = hilbert_series_ci(&pres)?;
        if ci != coinvariant {
            return Err(Error::InvariantBreach(format!(
                "{case}: presentation gives {ci}, degree rule gives {coinvariant}"
            )));
        }
        let dims = graded_dims_oracle(&pres, oracle_degree)?;
        let expected = ci.coefficients(oracle_degree as usize);
        if dims.iter().zip(&expected).any(|(&a, &b)| a as i64 != b) {
            return Err(Error::InvariantBreach(format!(
                "{case}: oracle dimensions {dims:?} differ from series {expected:?}"
            )));
        }
        oracle_checked_to_degree = Some(oracle_degree);
    }

    Ok(DiagramReport {
        case: case.name().to_string(),
        params: case.params(),
        equal: coinvariant == compact,
        coinvariant_series: coinvariant,
        compact_series: compact,
        rank,
        signature: signature(&pair)?,
        oracle_checked_to_degree,
        pair: pair.to_string(),
        theta_trace,
        base_equal: base == compact_base,
        base_series: base,
        compact_base_series: compact_base,
        status: case.status().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(num: &[u32], den: &[u32]) -> HilbertSeries {
        HilbertSeries::new(num.to_vec(), den.to_vec()).unwrap()
    }

    #[test]
    fn presentation_examples() {
        let p = grassmannian_presentation(2, 1).unwrap();
        let shown: Vec<String> = p.relations().iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["e1 + f1 - c1", "e1*f1 - c2"]);
        assert_eq!(p.relation_degrees(), vec![1, 2]);
        let p = grassmannian_presentation(4, 2).unwrap();
        assert_eq!(p.relation_degrees(), vec![1, 2, 3, 4]);
        for n in 2..=8 {
            for k in 1..n {
                assert_eq!(grassmannian_presentation(n, k).unwrap().relations().len(), n);
            }
        }
        assert!(grassmannian_presentation(3, 3).is_err());
        assert!(grassmannian_presentation(3, 0).is_err());
    }

    #[test]
    fn theta_examples() {
        let t = theta_coinvariant(&grassmannian_presentation(4, 2).unwrap()).unwrap();
        let names: Vec<&str> = t.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["e2", "f2", "c2", "c4"]);
        let shown: Vec<String> = t.relations().iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["e2 + f2 - c2", "e2*f2 - c4"]);
        assert_eq!(t.base(), &["c2".to_string(), "c4".to_string()]);

        let t = theta_coinvariant(&grassmannian_presentation(2, 1).unwrap()).unwrap();
        let names: Vec<&str> = t.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["c2"]);
        let shown: Vec<String> = t.relations().iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["-c2"]);

        let again = theta_coinvariant(&t).unwrap();
        assert_eq!(again.generators(), t.generators());
        assert_eq!(again.relations(), t.relations());
    }

    #[test]
    fn ci_series_examples() {
        let s = hilbert_series_ci(&grassmannian_presentation(2, 1).unwrap()).unwrap();
        assert_eq!(s, series(&[], &[1, 1]));
        let empty = GradedPresentation::new("C", vec![], vec![], vec![]).unwrap();
        assert_eq!(hilbert_series_ci(&empty).unwrap(), HilbertSeries::one());
        let s = hilbert_series_ci(&grassmannian_presentation(4, 2).unwrap()).unwrap();
        assert_eq!(s, series(&[], &[1, 1, 2, 2]));
    }

    #[test]
    fn oracle_examples() {
        let p = grassmannian_presentation(2, 1).unwrap();
        assert_eq!(graded_dims_oracle_with_cap(&p, 3, 1000).unwrap(), vec![1, 2, 3, 4]);
        let x = vec![Variable::new("x", 1)];
        let free = GradedPresentation::new("C[x]", x, vec![], vec![]).unwrap();
        assert_eq!(graded_dims_oracle_with_cap(&free, 4, 1000).unwrap(), vec![1; 5]);
        // C[e2, f2], the coinvariant ring of Gr_2(C^4).
        let t = theta_coinvariant(&grassmannian_presentation(4, 2).unwrap()).unwrap();
        assert_eq!(graded_dims_oracle_with_cap(&t, 6, 1000).unwrap(), vec![1, 0, 2, 0, 3, 0, 4]);
    }

    #[test]
    fn oracle_respects_cap() {
        let p = grassmannian_presentation(4, 2).unwrap();
        let err = graded_dims_oracle_with_cap(&p, 6, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { cap: 10, .. }));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn oracle_sees_non_regular_relations() {
        // x² and x³ in C[x]: the formal series would go negative.
        let vars = vec![Variable::new("x", 1)];
        let pow = |e: u32| {
            MultiPoly::from_terms(vars.clone(), [(vec![e], BigRational::one())]).unwrap()
        };
        let p = GradedPresentation::new("C[x]/(x2,x3)", vars.clone(), vec![], vec![pow(2), pow(3)])
            .unwrap();
        assert_eq!(graded_dims_oracle_with_cap(&p, 4, 100).unwrap(), vec![1, 1, 0, 0, 0]);
        assert!(hilbert_series_ci(&p).is_err());
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        let vars = vec![Variable::new("x", 1), Variable::new("y", 1)];
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new((-1).into(), 3.into());
        let r = MultiPoly::from_terms(vars.clone(), [(vec![1, 0], half), (vec![0, 1], third)]).unwrap();
        let ints: Vec<i64> = r.integer_terms().iter().map(|(_, c)| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![-2, 3]);
        let p = GradedPresentation::new("line", vars, vec![], vec![r]).unwrap();
        assert_eq!(graded_dims_oracle_with_cap(&p, 3, 100).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_inhomogeneous_relations() {
        let vars = vec![Variable::new("x", 1), Variable::new("y", 2)];
        let r = MultiPoly::from_terms(
            vars.clone(),
            [(vec![1, 0], BigRational::one()), (vec![0, 1], BigRational::one())],
        )
        .unwrap();
        assert!(GradedPresentation::new("bad", vars, vec![], vec![r]).is_err());
    }

    #[test]
    fn series_canonical_form() {
        assert_eq!(series(&[1, 2], &[2, 1, 1]), series(&[], &[1]));
        assert_eq!(series(&[4], &[2]).as_polynomial().unwrap().coeffs(), &[1, 0, 1]);
        assert!(series(&[3], &[2]).as_polynomial().is_none());
        assert_eq!(series(&[], &[2, 4]).coefficients(6), vec![1, 0, 1, 0, 2, 0, 2]);
        assert_eq!(series(&[2], &[1, 1]).to_string(), "(1-q^2)/(1-q)(1-q)");
    }

    #[test]
    fn compact_examples() {
        let q = DiagramCase::Quaternionic { n: 2, k: 1 };
        assert_eq!(compact_side_series(&q).unwrap(), series(&[], &[2, 2]));
        assert_eq!(compact_side_series(&DiagramCase::Cayley).unwrap(), series(&[], &[2, 4, 6, 8]));
        let s = compact_side_series(&DiagramCase::Sphere { n: 1 }).unwrap();
        assert_eq!(s, series(&[4], &[2, 2, 4]));
        assert_eq!(s.mul(&series(&[2, 4], &[])).as_polynomial().unwrap().coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn sphere_compact_side_is_the_even_orthogonal_ring() {
        for n in 1..=5 {
            let d2n: Vec<u32> = invariant_degrees(&GroupSpec::So(4 * n)).unwrap().0;
            assert_eq!(
                compact_side_series(&DiagramCase::Sphere { n }).unwrap(),
                HilbertSeries::polynomial_ring(&d2n).unwrap()
            );
        }
    }

    #[test]
    fn coinvariant_examples() {
        let q = DiagramCase::Quaternionic { n: 2, k: 1 };
        assert_eq!(coinvariant_side_series(&q).unwrap(), compact_side_series(&q).unwrap());
        let s = DiagramCase::So4n { n: 1 };
        assert_eq!(coinvariant_base_series(&s).unwrap(), series(&[], &[2]));
        assert_eq!(coinvariant_base_series(&DiagramCase::Cayley).unwrap(), series(&[], &[2, 6, 8, 12]));
    }

    #[test]
    fn verify_examples() {
        let r = verify_diagram(&DiagramCase::Quaternionic { n: 2, k: 1 }, 8).unwrap();
        assert!(r.equal && r.base_equal);
        assert_eq!((r.rank, r.signature, r.oracle_checked_to_degree), (2, 2, Some(8)));

        let r = verify_diagram(&DiagramCase::Sphere { n: 1 }, 8).unwrap();
        assert!(r.equal);
        assert_eq!(r.rank, 2);

        let r = verify_diagram(&DiagramCase::Cayley, 8).unwrap();
        assert!(r.equal && r.base_equal);
        assert_eq!((r.rank, r.signature), (3, 3));

        let r = verify_diagram(&DiagramCase::So4n { n: 2 }, 8).unwrap();
        assert!(r.equal && r.base_equal);
        assert_eq!((r.rank, r.signature, r.theta_trace), (2, 0, 2));
        assert_eq!(r.status, "expected");
    }

    #[test]
    fn standard_suite_is_equal() {
        for case in DiagramCase::standard_suite() {
            let r = verify_diagram(&case, 6).unwrap();
            assert!(r.equal && r.base_equal, "{case}");
        }
    }

    #[test]
    fn case_parsing() {
        assert_eq!(
            DiagramCase::new("quaternionic", Some(3), Some(1)).unwrap(),
            DiagramCase::Quaternionic { n: 3, k: 1 }
        );
        assert!(DiagramCase::new("quaternionic", Some(2), Some(2)).is_err());
        assert!(DiagramCase::new("sphere", None, None).is_err());
        assert!(matches!(DiagramCase::new("torus", None, None), Err(Error::Parse(_))));
        assert_eq!(DiagramCase::new("cayley", None, None).unwrap().to_string(), "cayley");
    }

    #[test]
    fn report_json_field_order() {
        let r = verify_diagram(&DiagramCase::Cayley, 4).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(
            r#"{"case":"cayley","params":[],"coinvariant_series":{"num":[],"den":[2,4,6,8]},"compact_series":{"num":[],"den":[2,4,6,8]},"equal":true,"rank":3,"signature":3,"oracle_checked_to_degree":null"#
        ));
    }
}
