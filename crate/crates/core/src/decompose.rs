//! Generators of the algebra of constants and the rewriting algorithm.
//!
//! A homogeneous constant `h` of degree `d` is polarized to a multilinear
//! constant `H`. Repeatedly subtracting `c * phi(LM(H))` writes `H` as a
//! combination of products of `F`/`G` family elements. Substituting
//! `X_s -> x_{ceil(s/d)}` into each family element follows the family
//! recursions and lands in polynomials of the named generators, and dividing
//! by `d!` gives `h`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::derivation::apply_delta;
use crate::exactpoly::{is_multilinear, Letter, Monomial, Polynomial, Rational, RingDesc, Var};
use crate::polar::polarize;
use crate::slbasis::{phi, recursion_split, BasisElement, Family, FamilyBuilder, FamilyElement};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    F,
    G,
}

/// Name of a generator: `f(i)`, `f(i,j)` with `i < j`, `g(i,j)` with
/// `i <= j`, or `g(i,j,k)` with `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenName {
    kind: GenKind,
    indices: Vec<u32>,
}

impl GenName {
    pub fn new(kind: GenKind, indices: Vec<u32>) -> Result<Self> {
        let strictly = indices.windows(2).all(|w| w[0] < w[1]);
        let weakly = indices.windows(2).all(|w| w[0] <= w[1]);
        let ok = indices.first().is_some_and(|&i| i >= 1)
            && match (kind, indices.len()) {
                (GenKind::F, 1) => true,
                (GenKind::F, 2) => strictly,
                (GenKind::G, 2) => weakly,
                (GenKind::G, 3) => strictly,
                _ => false,
            };
        if ok {
            Ok(GenName { kind, indices })
        } else {
            Err(Error::BadIndices { indices, reason: "not a generator index pattern" })
        }
    }

    pub fn f(indices: Vec<u32>) -> Result<Self> {
        GenName::new(GenKind::F, indices)
    }

    pub fn g(indices: Vec<u32>) -> Result<Self> {
        GenName::new(GenKind::G, indices)
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn degree(&self) -> u32 {
        self.indices.len() as u32
    }

    pub fn check_bounds(&self, n: u32) -> Result<()> {
        if self.indices.iter().all(|&i| i <= n) {
            Ok(())
        } else {
            Err(Error::BadIndices { indices: self.indices.clone(), reason: "generator index exceeds n" })
        }
    }

    /// The generator as a polynomial in `R` with `n` triples.
    pub fn polynomial(&self, n: u32) -> Result<Polynomial> {
        self.check_bounds(n)?;
        let ring = RingDesc::base(n);
        let term = |vars: &[(Letter, u32)], sign: i64| {
            Polynomial::monomial(
                ring,
                Monomial::from_factors(vars.iter().map(|&(l, s)| (Var::new(l, s), 1))),
                Rational::from_integer(sign.into()),
            )
        };
        use Letter::{X, Y, Z};
        let idx = &self.indices;
        let parts: Vec<Polynomial> = match (self.kind, idx.len()) {
            (GenKind::F, 1) => vec![term(&[(X, idx[0])], 1)],
            (GenKind::F, _) => vec![term(&[(X, idx[0]), (Y, idx[1])], 1), term(&[(X, idx[1]), (Y, idx[0])], -1)],
            (GenKind::G, 2) => vec![
                term(&[(X, idx[0]), (Z, idx[1])], 1),
                term(&[(Y, idx[0]), (Y, idx[1])], -1),
                term(&[(Z, idx[0]), (X, idx[1])], 1),
            ],
            (GenKind::G, _) => {
                let (i, j, k) = (idx[0], idx[1], idx[2]);
                vec![
                    term(&[(X, i), (Y, j), (Z, k)], 1),
                    term(&[(X, i), (Z, j), (Y, k)], -1),
                    term(&[(Y, i), (X, j), (Z, k)], -1),
                    term(&[(Y, i), (Z, j), (X, k)], 1),
                    term(&[(Z, i), (X, j), (Y, k)], 1),
                    term(&[(Z, i), (Y, j), (X, k)], -1),
                ]
            }
        };
        Ok(parts.iter().fold(Polynomial::zero(ring), |acc, p| &acc + p))
    }
}

/// Names sort by kind, then arity, then indices: `f(1) < f(2) < f(1,2) <
/// g(1,1) < ... < g(1,2,3)`.
impl Ord for GenName {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.kind, self.indices.len(), &self.indices).cmp(&(other.kind, other.indices.len(), &other.indices))
    }
}

impl PartialOrd for GenName {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GenKind::F => 'f',
            GenKind::G => 'g',
        };
        let idx: Vec<String> = self.indices.iter().map(u32::to_string).collect();
        write!(f, "{name}({})", idx.join(","))
    }
}

/// Product of generator powers, sorted by name with positive exponents.
pub type GenMonomial = Vec<(GenName, u32)>;

fn gen_monomial_mul(a: &GenMonomial, b: &GenMonomial) -> GenMonomial {
    let mut merged: BTreeMap<GenName, u32> = a.iter().cloned().collect();
    for (g, e) in b {
        *merged.entry(g.clone()).or_insert(0) += e;
    }
    merged.into_iter().collect()
}

/// A polynomial expression in the named generators with rational
/// coefficients. Syntactically equal products are collected; no relations
/// among the generators are applied.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenExpr {
    terms: BTreeMap<GenMonomial, Rational>,
}

impl GenExpr {
    pub fn zero() -> Self {
        GenExpr::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut e = GenExpr::zero();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn name(g: GenName) -> Self {
        let mut e = GenExpr::zero();
        e.add_term(vec![(g, 1)], Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant part.
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero)
    }

    /// All terms including the constant one (keyed by the empty product),
    /// in deterministic order.
    pub fn terms(&self) -> impl Iterator<Item = (&GenMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: GenMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &GenExpr) -> GenExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GenExpr) -> GenExpr {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &GenExpr) -> GenExpr {
        let mut out = GenExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(gen_monomial_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> GenExpr {
        if c.is_zero() {
            return GenExpr::zero();
        }
        GenExpr { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }
}

/// `coeff*name(i,...)^pow` terms joined by ` + ` / ` - `; the constant term
/// comes first.
impl fmt::Display for GenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", c.abs())?;
            for (g, e) in m {
                if *e == 1 {
                    write!(f, "*{g}")?;
                } else {
                    write!(f, "*{g}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// All generators for `n` triples: `f(i)`, `f(i,j)`, `g(i,j)`, `g(i,j,k)`.
pub fn generators(n: u32) -> Vec<(GenName, Polynomial)> {
    let mut names = Vec::new();
    for i in 1..=n {
        names.push(GenName { kind: GenKind::F, indices: vec![i] });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            names.push(GenName { kind: GenKind::F, indices: vec![i, j] });
        }
    }
    for i in 1..=n {
        for j in i..=n {
            names.push(GenName { kind: GenKind::G, indices: vec![i, j] });
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                names.push(GenName { kind: GenKind::G, indices: vec![i, j, k] });
            }
        }
    }
    names.sort();
    names
        .into_iter()
        .map(|g| {
            let p = g.polynomial(n).expect("indices within 1..=n");
            (g, p)
        })
        .collect()
}

/// One subtraction of the reduction loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub lead: Monomial,
    pub coeff: Rational,
    pub element: BasisElement,
}

/// Writes a multilinear constant as `sum c_i E_i` with basis products `E_i`.
pub fn reduce_multilinear(h: &Polynomial) -> Result<Vec<(Rational, BasisElement)>> {
    Ok(reduction_steps(h)?.into_iter().map(|s| (s.coeff, s.element)).collect())
}

/// Like [`reduce_multilinear`] but also reports the lead monomial removed at
/// each step.
pub fn reduction_steps(h: &Polynomial) -> Result<Vec<ReductionStep>> {
    h.ring().require_polarized()?;
    if !is_multilinear(h)? {
        return Err(Error::NotMultilinear);
    }
    let dh = apply_delta(h);
    if let Ok((m, c)) = dh.lead_monomial() {
        return Err(Error::NotAConstant { witness: Polynomial::monomial(dh.ring(), m, c).to_string() });
    }
    let mut builder = FamilyBuilder::new(h.ring());
    reduce_with(h, &mut builder)
}

fn reduce_with(h: &Polynomial, builder: &mut FamilyBuilder) -> Result<Vec<ReductionStep>> {
    let mut rest = h.clone();
    let mut steps: Vec<ReductionStep> = Vec::new();
    while let Ok((lead, coeff)) = rest.lead_monomial() {
        if steps.last().is_some_and(|s| s.lead <= lead) {
            return Err(Error::InternalInvariantViolation(format!(
                "lead monomial {} did not decrease",
                lead.format(true)
            )));
        }
        let element = phi(&lead).map_err(|_| {
            Error::InternalInvariantViolation(format!(
                "lead monomial {} of a multilinear constant is not a path monomial",
                lead.format(true)
            ))
        })?;
        let realized = builder.realize(&element)?;
        match realized.lead_term() {
            Ok((m, c)) if *m == lead && c.is_one() => {}
            _ => {
                return Err(Error::InternalInvariantViolation(format!(
                    "{element} does not have lead term {}",
                    lead.format(true)
                )))
            }
        }
        rest.sub_scaled(&coeff, &realized);
        steps.push(ReductionStep { lead, coeff, element });
    }
    Ok(steps)
}

/// Substitutes `X_s -> x_{ceil(s/d)}` into family elements, symbolically.
#[derive(Debug)]
pub struct FactorRestituter {
    n: u32,
    d: u32,
    cache: HashMap<FamilyElement, GenExpr>,
}

impl FactorRestituter {
    pub fn new(n: u32, d: u32) -> Self {
        assert!(n >= 1 && d >= 1);
        FactorRestituter { n, d, cache: HashMap::new() }
    }

    pub fn restitute(&mut self, e: &FamilyElement) -> Result<GenExpr> {
        let e = FamilyElement::new(e.kind, e.indices.clone())?;
        if e.indices.last().is_some_and(|&s| s > self.n * self.d) {
            return Err(Error::BadIndices { indices: e.indices, reason: "index exceeds n*d" });
        }
        Ok(self.restitute_checked(&e))
    }

    fn restitute_checked(&mut self, e: &FamilyElement) -> GenExpr {
        if let Some(x) = self.cache.get(e) {
            return x.clone();
        }
        let x = self.construct(e);
        self.cache.insert(e.clone(), x.clone());
        x
    }

    fn construct(&mut self, e: &FamilyElement) -> GenExpr {
        let triples: Vec<u32> = e.indices.iter().map(|s| s.div_ceil(self.d)).collect();
        let named = |kind, indices| GenExpr::name(GenName { kind, indices });
        // triples are non-decreasing since the indices are increasing
        let distinct = triples.windows(2).all(|w| w[0] < w[1]);
        match (e.kind, e.indices.len()) {
            (Family::F, 1) => named(GenKind::F, triples),
            (Family::F, 2) if distinct => named(GenKind::F, triples),
            (Family::F, 2) => GenExpr::zero(),
            (Family::G, 2) => named(GenKind::G, triples),
            (Family::G, 3) if distinct => named(GenKind::G, triples),
            (Family::G, 3) => GenExpr::zero(),
            (kind, _) => {
                let (i1, i2, i3, i4) = recursion_split(&e.indices);
                let a = self.restitute_checked(&FamilyElement { kind, indices: i1 });
                let b = self.restitute_checked(&FamilyElement { kind: Family::G, indices: i2 });
                let c = self.restitute_checked(&FamilyElement { kind, indices: i3 });
                let d = self.restitute_checked(&FamilyElement { kind: Family::G, indices: i4 });
                a.mul(&b).sub(&c.mul(&d))
            }
        }
    }
}

/// The unscaled restitution of one family element, as a generator
/// expression.
pub fn restitute_factor(e: &FamilyElement, n: u32, d: u32) -> Result<GenExpr> {
    FactorRestituter::new(n, d).restitute(e)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Rewrites a constant `h` of the base ring as a polynomial in the
/// generators.
pub fn decompose(h: &Polynomial) -> Result<GenExpr> {
    let ring = h.ring();
    ring.require_base()?;
    let dh = apply_delta(h);
    if let Ok((m, c)) = dh.lead_monomial() {
        return Err(Error::NotAConstant { witness: Polynomial::monomial(dh.ring(), m, c).to_string() });
    }
    let n = ring.triples();
    let mut out = GenExpr::zero();
    for (deg, component) in h.homogeneous_components() {
        if deg == 0 {
            out = out.add(&GenExpr::constant(component.coefficient(&Monomial::one())));
            continue;
        }
        let d = u32::try_from(deg).expect("degree fits in u32");
        let polarized = polarize(&component, d)?;
        let mut builder = FamilyBuilder::new(polarized.ring());
        let steps = reduce_with(&polarized, &mut builder)?;
        let mut restituter = FactorRestituter::new(n, d);
        let scale = Rational::new(BigInt::one(), factorial(d));
        for step in steps {
            let mut term = GenExpr::constant(&step.coeff * &scale);
            for e in &step.element.factors {
                term = term.mul(&restituter.restitute(e)?);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term);
        }
    }
    Ok(out)
}

/// Substitutes the generator polynomials into `x`.
pub fn expand(x: &GenExpr, n: u32) -> Result<Polynomial> {
    let ring = RingDesc::base(n);
    let mut cache: HashMap<GenName, Polynomial> = HashMap::new();
    let mut out = Polynomial::zero(ring);
    for (m, c) in x.terms() {
        let mut term = Polynomial::constant(ring, c.clone());
        for (g, e) in m {
            if !cache.contains_key(g) {
                cache.insert(g.clone(), g.polynomial(n)?);
            }
            term = &term * &cache[g].pow(*e);
        }
        out = &out + &term;
    }
    Ok(out)
}
