//! Property checks of every result the library relies on, each against an
//! independent brute-force oracle. Shared by the `acceptance` test target and
//! the CLI `selftest` command.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::decompose::{decompose, expand, generators, GenExpr, GenName};
use crate::derivation::apply_delta;
use crate::exactpoly::{is_multilinear, parse_poly, Letter, Monomial, Polynomial, Rational, RingDesc, Var};
use crate::jordan::{delta_tensor_matrix, jordan_type_of_nilpotent, kron_jordan, mu, ExactMatrix};
use crate::matrix::polynomial_rank;
use crate::pathgraph::{enumerate_paths, is_path_word, path_counts};
use crate::polar::{evaluate_eps, polarize, restitute};
use crate::slbasis::{phi, theta_basis, FamilyBuilder, FamilyElement};
use crate::Error;

/// Totals `|Path_d|` for `d = 0..=6`, frozen from the nullity of the
/// tensor-power derivation matrix.
pub const PATH_TOTALS: [u64; 7] = [1, 1, 3, 7, 19, 51, 141];

#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Largest `d` for the tensor-power and basis checks.
    pub max_d: u32,
    /// Largest number of triples for the polynomial checks.
    pub max_n: u32,
    /// Largest block size in the Kronecker check.
    pub kron_max: u64,
    /// Largest `d` for comparing the two count recursions.
    pub recursion_max_d: u32,
    pub polar_samples: usize,
    pub decompose_samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_d: 6,
            max_n: 3,
            kron_max: 12,
            recursion_max_d: 40,
            polar_samples: 200,
            decompose_samples: 100,
            seed: 0x5eed_2018,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    /// Wall-clock budget for the check at full scale.
    pub budget: Duration,
}

impl CheckOutcome {
    pub fn summary(&self) -> String {
        format!(
            "[{}] criterion {}: {} ({:.2}s, budget {}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

fn timed(id: u32, name: &'static str, budget_secs: u64, f: impl FnOnce() -> Result<String, String>) -> CheckOutcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome { id, name, passed, detail, elapsed, budget: Duration::from_secs(budget_secs) }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run_all(cfg: &CheckConfig) -> Vec<CheckOutcome> {
    vec![
        kronecker_jordan(cfg),
        multiplicities(cfg),
        path_counts_match_kernel(cfg),
        basis_correctness(cfg),
        polarization_round_trip(cfg),
        decomposition_soundness(cfg),
        generation(cfg),
        minimality(cfg),
        degenerate_paths(cfg),
    ]
}

fn biguint_map(t: &crate::jordan::JordanType) -> BTreeMap<u64, BigUint> {
    t.blocks().iter().map(|(&k, &v)| (k, BigUint::from(v))).collect()
}

/// Kronecker products of unipotent blocks against the rank oracle.
pub fn kronecker_jordan(cfg: &CheckConfig) -> CheckOutcome {
    timed(1, "Kronecker products of Jordan blocks", 30, || {
        let pairs: Vec<(u64, u64)> =
            (1..=cfg.kron_max).flat_map(|m| (m..=cfg.kron_max).map(move |n| (m, n))).collect();
        pairs.par_iter().try_for_each(|&(m, n)| {
            let a = ExactMatrix::jordan_block(m as usize, 1);
            let b = ExactMatrix::jordan_block(n as usize, 1);
            let prod = a.kronecker(&b);
            let nil = prod.sub(&ExactMatrix::identity(prod.rows()));
            let oracle = jordan_type_of_nilpotent(&nil).map_err(|e| e.to_string())?;
            let formula = kron_jordan(m, n);
            ensure(oracle == formula, || format!("J{m} x J{n}: oracle {oracle}, formula {formula}"))?;
            ensure(formula.dimension() == m * n, || format!("J{m} x J{n}: wrong dimension"))
        })?;
        Ok(format!("{} pairs up to {}", pairs.len(), cfg.kron_max))
    })
}

/// Both count recursions agree, and match the Jordan type of the
/// tensor-power derivation matrix.
pub fn multiplicities(cfg: &CheckConfig) -> CheckOutcome {
    timed(2, "block multiplicities = path counts = Jordan type", 120, || {
        for d in 0..=cfg.recursion_max_d {
            ensure(mu(d) == path_counts(d), || format!("mu and nu differ at d = {d}"))?;
        }
        (1..=cfg.max_d).into_par_iter().try_for_each(|d| {
            let t = jordan_type_of_nilpotent(&delta_tensor_matrix(d)).map_err(|e| e.to_string())?;
            ensure(biguint_map(&t) == mu(d), || format!("d = {d}: oracle {t} differs from mu"))
        })?;
        Ok(format!("recursions to d = {}, matrices to d = {}", cfg.recursion_max_d, cfg.max_d))
    })
}

/// Path totals equal the kernel dimension of the tensor-power derivation.
pub fn path_counts_match_kernel(cfg: &CheckConfig) -> CheckOutcome {
    timed(3, "path counts = kernel dimension", 120, || {
        let mut totals = Vec::new();
        for d in 0..=cfg.max_d {
            let paths = enumerate_paths(d).len() as u64;
            let nu: BigUint = path_counts(d).values().sum();
            // the zeroth tensor power is the trivial 1-dimensional module
            let nullity = if d == 0 { 1 } else { delta_tensor_matrix(d).nullity() as u64 };
            ensure(BigUint::from(paths) == nu && paths == nullity, || {
                format!("d = {d}: {paths} paths, nu total {nu}, nullity {nullity}")
            })?;
            if let Some(&frozen) = PATH_TOTALS.get(d as usize) {
                ensure(paths == frozen, || format!("d = {d}: {paths} paths, expected {frozen}"))?;
            }
            totals.push(paths);
        }
        Ok(format!("totals {totals:?}"))
    })
}

/// Lead-term lemma for the families, `LM(phi(alpha)) = alpha`, and linear
/// independence of the realized basis.
pub fn basis_correctness(cfg: &CheckConfig) -> CheckOutcome {
    timed(4, "basis of multilinear constants", 120, || {
        let width = cfg.max_d.max(2);
        let mut builder = FamilyBuilder::new(RingDesc::polarized(1, width + 1));
        let mut sets = 0;
        for mask in 1u32..(1 << (width + 1)) {
            let idx: Vec<u32> = (1..=width + 1).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            if idx.len() > width as usize || idx.len() < 2 {
                continue;
            }
            let mut elems = vec![FamilyElement::f(idx.clone()).expect("valid")];
            if idx.len() >= 3 {
                elems.push(FamilyElement::g(idx.clone()).expect("valid"));
            }
            for e in elems {
                let p = builder.build(&e).map_err(|x| x.to_string())?;
                check_two_leading_terms(&e, &p)?;
                sets += 1;
            }
        }

        let mut sizes = Vec::new();
        for d in 1..=cfg.max_d {
            let ring = RingDesc::polarized(1, d);
            let mut b = FamilyBuilder::new(ring);
            let mut realized = Vec::new();
            for (w, e) in theta_basis(d) {
                let p = b.realize(&e).map_err(|x| x.to_string())?;
                let (m, c) = p.lead_monomial().map_err(|x| x.to_string())?;
                ensure(m == w.monomial() && c.is_one(), || format!("phi({w}) = {e} has lead term {c}*{m:?}"))?;
                ensure(apply_delta(&p).is_zero(), || format!("theta({w}) is not a constant"))?;
                ensure(is_multilinear(&p).unwrap_or(false), || format!("theta({w}) is not multilinear"))?;
                realized.push(p);
            }
            let rank = polynomial_rank(&realized);
            let nullity = delta_tensor_matrix(d).nullity();
            ensure(rank == realized.len() && rank == nullity, || {
                format!("d = {d}: {} elements, rank {rank}, kernel dimension {nullity}", realized.len())
            })?;
            sizes.push(rank);
        }
        Ok(format!("{sets} family elements, basis sizes {sizes:?}"))
    })
}

fn check_two_leading_terms(e: &FamilyElement, p: &Polynomial) -> Result<(), String> {
    let mut top = p.terms().rev();
    let (m1, c1) = top.next().ok_or("empty family element")?;
    let (m2, c2) = top.next().ok_or("family element with a single term")?;
    let first = e.expected_lead();
    // the runner-up swaps the letters of the first two subscripts
    let (a, b) = (e.indices[0], e.indices[1]);
    let second = first.map_vars(|v| match (v.subscript, v.letter) {
        (s, Letter::X) if s == a => Var::y(a),
        (s, Letter::Y) if s == b => Var::x(b),
        _ => v,
    });
    ensure(*m1 == first && c1.is_one(), || format!("{e}: lead term {c1}*{}", m1.format(true)))?;
    ensure(*m2 == second && *c2 == -Rational::one(), || format!("{e}: second term {c2}*{}", m2.format(true)))
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let mut num: i64 = rng.gen_range(-9..=9);
    if num == 0 {
        num = 1;
    }
    Rational::new(num.into(), rng.gen_range(1i64..=4).into())
}

fn random_homogeneous(rng: &mut StdRng, n: u32, d: u32) -> Polynomial {
    let ring = RingDesc::base(n);
    let mut p = Polynomial::zero(ring);
    for _ in 0..rng.gen_range(1..=5) {
        let vars = (0..d).map(|_| (Var::new(Letter::ALL[rng.gen_range(0..3)], rng.gen_range(1..=n)), 1));
        p.add_term(Monomial::from_factors(vars), random_rational(rng));
    }
    p
}

/// Restitution inverts polarization and both maps commute with the
/// derivation.
pub fn polarization_round_trip(cfg: &CheckConfig) -> CheckOutcome {
    timed(5, "polarization and restitution", 120, || {
        let mut rng = StdRng::seed_from_u64(cfg.seed);
        let max_n = cfg.max_n.clamp(1, 3);
        let max_d = cfg.max_d.clamp(1, 5);
        let cases: Vec<Polynomial> = (0..cfg.polar_samples)
            .map(|_| {
                let n = rng.gen_range(1..=max_n);
                let d = rng.gen_range(1..=max_d);
                random_homogeneous(&mut rng, n, d)
            })
            .collect();
        cases.par_iter().try_for_each(|f| {
            let d = f.degree().unwrap_or(1).max(1) as u32;
            let err = |x: Error| format!("{f}: {x}");
            let big = polarize(f, d).map_err(err)?;
            ensure(is_multilinear(&big).unwrap_or(false), || format!("polarization of {f} is not multilinear"))?;
            ensure(restitute(&big).map_err(err)? == *f, || format!("round trip fails for {f}"))?;
            ensure(polarize(&apply_delta(f), d).map_err(err)? == apply_delta(&big), || {
                format!("polarization does not commute with Delta on {f}")
            })?;
            ensure(evaluate_eps(&apply_delta(&big)).map_err(err)? == apply_delta(&evaluate_eps(&big).map_err(err)?), || {
                format!("substitution does not commute with Delta on {f}")
            })
        })?;
        Ok(format!("{} random forms, n <= {max_n}, d <= {max_d}", cases.len()))
    })
}

/// All multisets of generators (by index into `gens`) with total degree
/// exactly `d`.
fn products_of_degree(gens: &[(GenName, Polynomial)], d: u32) -> Vec<Vec<usize>> {
    fn go(gens: &[(GenName, Polynomial)], start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..gens.len() {
            let deg = gens[i].0.degree();
            if deg <= left {
                cur.push(i);
                go(gens, i, left - deg, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(gens, 0, d, &mut Vec::new(), &mut out);
    out
}

fn random_genexpr(rng: &mut StdRng, n: u32, max_deg: u32) -> GenExpr {
    let gens = generators(n);
    let mut x = GenExpr::zero();
    if rng.gen_bool(0.3) {
        x = x.add(&GenExpr::constant(random_rational(rng)));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let target = rng.gen_range(1..=max_deg);
        let mut term = GenExpr::constant(random_rational(rng));
        let mut deg = 0;
        while deg < target {
            let fitting: Vec<&(GenName, Polynomial)> = gens.iter().filter(|(g, _)| deg + g.degree() <= target).collect();
            let (g, _) = fitting[rng.gen_range(0..fitting.len())];
            term = term.mul(&GenExpr::name(g.clone()));
            deg += g.degree();
        }
        x = x.add(&term);
    }
    x
}

/// `expand(decompose(h)) = h` on random constants built from generators.
pub fn decomposition_soundness(cfg: &CheckConfig) -> CheckOutcome {
    timed(6, "decomposition soundness", 120, || {
        let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x6);
        let max_n = cfg.max_n.clamp(1, 3);
        let max_deg = cfg.max_d.clamp(1, 5);
        let cases: Vec<(u32, Polynomial)> = (0..cfg.decompose_samples)
            .map(|_| {
                let n = rng.gen_range(1..=max_n);
                let x = random_genexpr(&mut rng, n, max_deg);
                (n, expand(&x, n).expect("generated names are in range"))
            })
            .collect();
        let mixed = cases.iter().filter(|(_, h)| h.homogeneous_components().len() > 1).count();
        cases.par_iter().try_for_each(|(n, h)| {
            let x = decompose(h).map_err(|e| format!("{h}: {e}"))?;
            let back = expand(&x, *n).map_err(|e| format!("{h}: {e}"))?;
            ensure(back == *h, || format!("expand(decompose(h)) != h for h = {h}"))
        })?;
        Ok(format!("{} random constants ({mixed} non-homogeneous)", cases.len()))
    })
}

/// Monomials of degree `d` in the base ring on `n` triples.
fn monomials_of_degree(n: u32, d: u32) -> Vec<Monomial> {
    let vars: Vec<Var> = (1..=n).flat_map(|s| Letter::ALL.map(|l| Var::new(l, s))).collect();
    fn go(vars: &[Var], start: usize, left: u32, cur: &mut Vec<Var>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_factors(cur.iter().map(|&v| (v, 1))));
            return;
        }
        for i in start..vars.len() {
            cur.push(vars[i]);
            go(vars, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&vars, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Kernel dimension of the derivation on `R_d`, by exact elimination on the
/// monomial basis.
pub fn kernel_dimension(n: u32, d: u32) -> (usize, usize) {
    let ring = RingDesc::base(n);
    let basis = monomials_of_degree(n, d);
    let images: Vec<Polynomial> =
        basis.iter().map(|m| apply_delta(&Polynomial::monomial(ring, m.clone(), Rational::one()))).collect();
    (basis.len(), basis.len() - polynomial_rank(&images))
}

fn product_polys(gens: &[(GenName, Polynomial)], n: u32, d: u32, skip: Option<usize>) -> Vec<Polynomial> {
    products_of_degree(gens, d)
        .into_iter()
        .filter(|p| skip.is_none_or(|s| !p.contains(&s)))
        .map(|p| p.iter().fold(Polynomial::one(RingDesc::base(n)), |acc, &i| &acc * &gens[i].1))
        .collect()
}

fn generation_cells(cfg: &CheckConfig) -> Vec<(u32, u32)> {
    let mut cells = Vec::new();
    for n in 1..=cfg.max_n.min(3) {
        let top = if n <= 2 { 5 } else { 4 };
        for d in 1..=top.min(cfg.max_d.max(1)) {
            cells.push((n, d));
        }
    }
    cells
}

/// Products of generators span the whole kernel in each degree.
pub fn generation(cfg: &CheckConfig) -> CheckOutcome {
    timed(7, "generators span the constants", 180, || {
        let cells = generation_cells(cfg);
        let rows: Vec<String> = cells
            .par_iter()
            .map(|&(n, d)| {
                let gens = generators(n);
                let span = polynomial_rank(&product_polys(&gens, n, d, None));
                let (space, kernel) = kernel_dimension(n, d);
                if n == 3 && d == 4 {
                    ensure(space == 495, || format!("R_4 on 3 triples has dimension {space}"))?;
                }
                ensure(span == kernel, || format!("n = {n}, d = {d}: span {span}, kernel {kernel}"))?;
                Ok(format!("(n={n},d={d}):{kernel}"))
            })
            .collect::<Result<_, String>>()?;
        Ok(rows.join(" "))
    })
}

/// No generator is a combination of same-degree products of the others.
pub fn minimality(cfg: &CheckConfig) -> CheckOutcome {
    timed(8, "generators are minimal", 60, || {
        let mut checked = 0;
        for n in 1..=cfg.max_n.min(3) {
            let gens = generators(n);
            for (i, (g, p)) in gens.iter().enumerate() {
                let mut others = product_polys(&gens, n, g.degree(), Some(i));
                let without = polynomial_rank(&others);
                others.push(p.clone());
                ensure(polynomial_rank(&others) == without + 1, || format!("n = {n}: {g} is redundant"))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} generators"))
    })
}

/// Error reporting: non-constants, non-path monomials, and parse errors.
pub fn degenerate_paths(cfg: &CheckConfig) -> CheckOutcome {
    timed(9, "degenerate inputs and error paths", 60, || {
        // non-constants report a genuine term of Delta(h)
        let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x9);
        let mut witnesses = 0;
        for text in ["y1", "z1", "x1*z2", "y1^2 + x1", "z1*z2 - y1*y2"] {
            let h = parse_poly(text, RingDesc::base(2)).map_err(|e| e.to_string())?;
            witnesses += check_witness(&h)?;
        }
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let d = rng.gen_range(1..=4);
            let h = random_homogeneous(&mut rng, n, d);
            if !apply_delta(&h).is_zero() {
                witnesses += check_witness(&h)?;
            }
        }

        // phi rejects every non-path word
        let mut rejected = 0;
        for d in 1..=cfg.max_d.min(6) {
            for code in 0..3usize.pow(d) {
                let mut c = code;
                let word: Vec<Letter> = (0..d)
                    .map(|_| {
                        let l = Letter::ALL[c % 3];
                        c /= 3;
                        l
                    })
                    .collect();
                if is_path_word(&word) {
                    continue;
                }
                let alpha = Monomial::product_of(word.iter().enumerate().map(|(i, &l)| Var::new(l, i as u32 + 1)));
                ensure(matches!(phi(&alpha), Err(Error::NotAPathMonomial(_))), || {
                    format!("phi accepted {}", alpha.format(true))
                })?;
                rejected += 1;
            }
        }
        for bad in ["X1*X1", "X1*Y1", "X1^2*Y2"] {
            let m = parse_poly(bad, RingDesc::polarized(1, 2)).map_err(|e| e.to_string())?.lead_monomial().map_err(|e| e.to_string())?.0;
            ensure(phi(&m).is_err(), || format!("phi accepted {bad}"))?;
        }

        // parse errors carry positions
        let cases: [(&str, usize); 8] =
            [("", 0), ("x1 +", 4), ("x1 ** y1", 4), ("w1", 0), ("x", 1), ("x1 y1", 3), ("X1", 0), ("2*x1^", 5)];
        for (text, pos) in cases {
            match parse_poly(text, RingDesc::base(2)) {
                Err(Error::Syntax { pos: p, .. }) if p == pos => {}
                other => return Err(format!("parse {text:?}: expected syntax error at {pos}, got {other:?}")),
            }
        }
        ensure(
            matches!(parse_poly("x4", RingDesc::base(3)), Err(Error::SubscriptOutOfRange { subscript: 4, .. })),
            || "x4 accepted over 3 triples".into(),
        )?;
        Ok(format!("{witnesses} witnesses, {rejected} non-path words rejected, {} parse errors", cases.len() + 1))
    })
}

fn check_witness(h: &Polynomial) -> Result<usize, String> {
    let dh = apply_delta(h);
    match decompose(h) {
        Err(Error::NotAConstant { witness }) => {
            let term = parse_poly(&witness, h.ring()).map_err(|e| format!("witness {witness:?}: {e}"))?;
            let (m, c) = term.lead_monomial().map_err(|e| e.to_string())?;
            ensure(term.len() == 1 && dh.coefficient(&m) == c, || format!("{witness} is not a term of Delta({h}) = {dh}"))?;
            Ok(1)
        }
        other => Err(format!("decompose({h}) should fail with NotAConstant, got {other:?}")),
    }
}
