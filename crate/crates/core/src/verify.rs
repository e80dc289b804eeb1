//! Verification suites: each check runs a property over an exhaustive or
//! seeded random family of cases and reports how many failed.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canonical::{sharp_on_canonical, CanonicalBasis, Schedule};
use crate::crystal::{crystal_graph, e_tilde, embed_phi, f_tilde, random_vertex, Component};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::{GaloisField, Rationals};
use crate::hallpbw::{aut_order, alpha, e_prime_basis, f_basis, scalar_product, PBWVector};
use crate::involution::{
    flat, mullineux, mw_dual, partition_to_multisegment, sharp, sharp_random, tau, Partition,
};
use crate::laurent::LaurentPoly;
use crate::multisegment::{DegreeVector, Multisegment, Segment};
use crate::quiverrep::{brute_force_aut_count, classify, generic_commutant_dual, realize, submodule_types};
use crate::ring::VertexRing;

/// At most this many failure messages are kept per check.
const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Acceptance criterion covered by the check, if any.
    pub criterion: Option<u8>,
    pub passed: bool,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("{status} {} ({} cases, {} failed, {:.2}s)", self.name, self.cases, self.failed, self.seconds)
    }
}

/// Size limits for every check.
#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub cyclic: Vec<u32>,
    pub integers: bool,
    /// Total degree for exhaustive cyclic checks (involution laws, crystal
    /// laws, geometry, round trip).
    pub max_degree: usize,
    /// Total degree for exhaustive integer checks of the involutions.
    pub integer_degree: usize,
    /// Total degree for the integer geometric check.
    pub integer_geometry_degree: usize,
    pub partition_size: usize,
    pub random_vertices: usize,
    pub random_orders: usize,
    /// Total dimension for Hall and automorphism counts.
    pub max_dim: usize,
    pub hall_qs: Vec<u64>,
    pub aut_qs: Vec<u64>,
    pub adjoint_degree: usize,
    pub canonical: Vec<(u32, usize)>,
    pub round_trip_random: usize,
    pub seed: u64,
}

impl Bounds {
    /// The bounds of the acceptance criteria.
    pub fn full() -> Self {
        Bounds {
            cyclic: vec![2, 3],
            integers: true,
            max_degree: 6,
            integer_degree: 8,
            integer_geometry_degree: 6,
            partition_size: 8,
            random_vertices: 100,
            random_orders: 3,
            max_dim: 4,
            hall_qs: vec![2, 3, 4],
            aut_qs: vec![2, 3],
            adjoint_degree: 5,
            canonical: vec![(2, 6), (3, 4)],
            round_trip_random: 200,
            seed: 0,
        }
    }

    pub fn quick() -> Self {
        Bounds {
            max_degree: 4,
            integer_degree: 5,
            integer_geometry_degree: 4,
            partition_size: 6,
            random_vertices: 20,
            max_dim: 3,
            adjoint_degree: 4,
            canonical: vec![(2, 4), (3, 3)],
            round_trip_random: 20,
            ..Bounds::full()
        }
    }

    /// Restrict to one ring.
    pub fn only_ring(mut self, ring: VertexRing) -> Self {
        match ring {
            VertexRing::Cyclic(n) => {
                self.cyclic = vec![n];
                self.integers = false;
                self.canonical.retain(|&(k, _)| k == n);
                if self.canonical.is_empty() {
                    self.canonical.push((n, 4));
                }
            }
            VertexRing::Integers => {
                self.cyclic.clear();
                self.integers = true;
                self.canonical.clear();
            }
        }
        self
    }

    /// Cap every degree bound at `d`.
    pub fn cap_degree(mut self, d: usize) -> Self {
        self.max_degree = self.max_degree.min(d);
        self.integer_degree = self.integer_degree.min(d);
        self.integer_geometry_degree = self.integer_geometry_degree.min(d);
        self.partition_size = self.partition_size.min(d);
        self.adjoint_degree = self.adjoint_degree.min(d);
        for c in &mut self.canonical {
            c.1 = c.1.min(d);
        }
        self
    }

    fn cyclic_rings(&self) -> Vec<VertexRing> {
        self.cyclic.iter().map(|&n| VertexRing::Cyclic(n)).collect()
    }

    fn all_rings(&self) -> Vec<VertexRing> {
        let mut rings = self.cyclic_rings();
        if self.integers {
            rings.push(VertexRing::Integers);
        }
        rings
    }
}

pub const SUITES: [&str; 7] = ["involution", "crystal", "hall", "canonical", "geometry", "mullineux", "all"];

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub bounds: Bounds,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "bounds": serde_json::to_value(&self.bounds).expect("bounds serialize"),
            "checks": serde_json::to_value(&self.checks).expect("checks serialize"),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.checks.iter().map(|c| c.line() + "\n").collect();
        for c in self.checks.iter().filter(|c| !c.passed) {
            for f in &c.failures {
                out.push_str(&format!("  {}: {f}\n", c.name));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{}: {} checks, {failed} failed\n", self.suite, self.checks.len()));
        out
    }
}

/// Run a named suite.
pub fn run_suite(suite: &str, bounds: &Bounds) -> Result<Report> {
    let checks = match suite {
        "involution" => vec![involution_laws(bounds), path_independence(bounds), mw_agreement(bounds)],
        "mullineux" => vec![conjugation(bounds), mullineux_agreement(bounds)],
        "hall" => vec![hall_counts(bounds), adjointness(bounds), aut_counts(bounds)],
        "crystal" => vec![crystal_laws(bounds), component_counts()],
        "canonical" => vec![canonical_basis_check(bounds)],
        "geometry" => vec![geometric_dual(bounds), round_trip(bounds)],
        "all" => vec![
            involution_laws(bounds),
            path_independence(bounds),
            mw_agreement(bounds),
            conjugation(bounds),
            mullineux_agreement(bounds),
            hall_counts(bounds),
            adjointness(bounds),
            aut_counts(bounds),
            crystal_laws(bounds),
            component_counts(),
            canonical_basis_check(bounds),
            geometric_dual(bounds),
            round_trip(bounds),
        ],
        other => return Err(Error::InvalidInput(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    let checks = checks.into_iter().filter(|c| c.cases > 0 || !c.passed).collect();
    Ok(Report { suite: suite.to_string(), bounds: bounds.clone(), checks })
}

type Outcome = std::result::Result<(), String>;

fn run_cases<T: Sync>(name: &str, criterion: u8, cases: &[T], check: impl Fn(&T) -> Outcome + Sync) -> CheckResult {
    let start = Instant::now();
    let mut failures: Vec<String> = cases.par_iter().filter_map(|c| check(c).err()).collect();
    failures.sort();
    let failed = failures.len();
    failures.truncate(MAX_REPORTED);
    CheckResult {
        name: name.to_string(),
        criterion: Some(criterion),
        passed: failed == 0,
        cases: cases.len(),
        failed,
        failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn err(e: Error) -> String {
    format!("{}: {e}", e.name())
}

/// Labels with an involution: aperiodic over `Z/n`, anything over `Z`.
fn vertices(ring: VertexRing, max_total: usize) -> Vec<Multisegment> {
    match ring {
        VertexRing::Cyclic(n) => enumerate::aperiodic_up_to(n, max_total),
        VertexRing::Integers => enumerate::integer_up_to(max_total),
    }
}

pub fn involution_laws(b: &Bounds) -> CheckResult {
    let mut cases = Vec::new();
    for ring in b.cyclic_rings() {
        cases.extend(vertices(ring, b.max_degree));
    }
    if b.integers {
        cases.extend(vertices(VertexRing::Integers, b.integer_degree));
    }
    run_cases("involution laws", 1, &cases, |m| {
        let s = sharp(m).map_err(err)?;
        expect_eq("sharp^2", &sharp(&s).map_err(err)?, m)?;
        expect_eq("flat^2", &flat(&flat(m)), m)?;
        let t = tau(m).map_err(err)?;
        expect_eq("tau^2", &tau(&t).map_err(err)?, m)?;
        expect_eq("sharp.flat", &sharp(&flat(m)).map_err(err)?, &t)?;
        expect_eq("flat.sharp", &flat(&s), &t)
    })
}

pub fn path_independence(b: &Bounds) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut cases = Vec::new();
    for ring in b.all_rings() {
        for _ in 0..b.random_vertices {
            let len = rng.gen_range(1..=b.max_degree.max(1) + 2);
            cases.push((random_vertex(ring, len, &mut rng), rng.gen::<u64>()));
        }
    }
    let orders = b.random_orders;
    run_cases("path independence", 2, &cases, |(m, seed)| {
        let want = sharp(m).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(*seed);
        for _ in 0..orders {
            expect_eq(&format!("sharp({m}) along a random path"), sharp_random(m, &mut rng).map_err(err)?, want.clone())?;
        }
        Ok(())
    })
}

pub fn mw_agreement(b: &Bounds) -> CheckResult {
    let cases = if b.integers { vertices(VertexRing::Integers, b.integer_degree) } else { Vec::new() };
    run_cases("mw_dual = tau", 3, &cases, |m| {
        expect_eq(&format!("mw_dual({m})"), mw_dual(m).map_err(err)?, tau(m).map_err(err)?)
    })
}

pub fn conjugation(b: &Bounds) -> CheckResult {
    let cases: Vec<Partition> = (0..=b.partition_size).flat_map(Partition::all_of).collect();
    let z = VertexRing::Integers;
    run_cases("conjugation", 4, &cases, |lambda| {
        let m = partition_to_multisegment(lambda, z);
        let want = partition_to_multisegment(&lambda.conjugate(), z);
        expect_eq(&format!("sharp of {lambda}"), sharp(&m).map_err(err)?, want)
    })
}

pub fn mullineux_agreement(b: &Bounds) -> CheckResult {
    let cases: Vec<(u32, Partition)> = b
        .cyclic
        .iter()
        .flat_map(|&n| (0..=b.partition_size).flat_map(move |k| Partition::regular_of(k, n as usize).into_iter().map(move |p| (n, p))))
        .collect();
    run_cases("Mullineux", 5, &cases, |(n, lambda)| {
        let ring = VertexRing::Cyclic(*n);
        let m = partition_to_multisegment(lambda, ring);
        let image = mullineux(lambda, *n as usize).map_err(err)?;
        expect_eq(
            &format!("sharp of {lambda} over Z/{n}"),
            sharp(&m).map_err(err)?,
            partition_to_multisegment(&image, ring),
        )
    })
}

/// `v^{-alpha} c(v)` as a polynomial in `v^{-2}`, evaluated at `q`.
fn evaluate_in_q(c: &LaurentPoly, alpha: i64, q: u64) -> Option<i128> {
    let mut total: i128 = 0;
    for (e, k) in c.shift(-alpha).terms() {
        if e > 0 || e % 2 != 0 {
            return None;
        }
        total += k as i128 * (q as i128).pow((-e / 2) as u32);
    }
    Some(total)
}

pub fn hall_counts(b: &Bounds) -> CheckResult {
    // one case per (ring, m, residue)
    let mut cases = Vec::new();
    for ring in b.cyclic_rings() {
        let n = ring.modulus().expect("cyclic") as i64;
        for m in enumerate::up_to(ring, b.max_dim) {
            for i in 0..n {
                cases.push((m.clone(), i));
            }
        }
    }
    let qs = b.hall_qs.clone();
    run_cases("Hall counts", 6, &cases, |(m, i)| {
        let ring = m.ring();
        let o = Multisegment::from_segments(ring, [(Segment::from_head(ring, 1, *i), 1)]);
        let target = m.degree().plus(&DegreeVector::unit(*i));
        let action = f_basis(*i, m);
        for &q in &qs {
            let field = GaloisField::new(q).map_err(err)?;
            for big in enumerate::with_degree(ring, &target) {
                let counts = submodule_types(&big, &m.degree(), &field).map_err(err)?;
                let count = counts.get(&(m.clone(), o.clone())).copied().unwrap_or(0) as i128;
                let c = action.coeff(&big);
                let predicted = if c.is_zero() {
                    Some(0)
                } else {
                    let a = alpha(&o, m, &big).map_err(err)?;
                    evaluate_in_q(&c, a, q)
                };
                if predicted != Some(count) {
                    return Err(format!("f_{i}<{m}> at <{big}>, q = {q}: coefficient {c}, count {count}"));
                }
            }
        }
        Ok(())
    })
}

pub fn adjointness(b: &Bounds) -> CheckResult {
    let mut cases = Vec::new();
    for ring in b.cyclic_rings() {
        let n = ring.modulus().expect("cyclic") as i64;
        for w in enumerate::up_to(ring, b.adjoint_degree) {
            for i in 0..n {
                let d = w.degree().minus(&DegreeVector::unit(i));
                for m in enumerate::with_degree(ring, &d) {
                    cases.push((m, i, w.clone()));
                }
            }
        }
    }
    run_cases("adjointness", 7, &cases, |(m, i, w)| {
        let (u, x) = (PBWVector::basis(m), PBWVector::basis(w));
        let left = scalar_product(&f_basis(*i, m), &x).map_err(err)?;
        let right = scalar_product(&u, &e_prime_basis(*i, w)).map_err(err)?;
        if left == right {
            Ok(())
        } else {
            Err(format!("(f_{i}<{m}>, <{w}>) = {left:?} but (<{m}>, e'_{i}<{w}>) = {right:?}"))
        }
    })
}

pub fn aut_counts(b: &Bounds) -> CheckResult {
    let mut cases = Vec::new();
    for ring in b.all_rings() {
        for m in enumerate::up_to(ring, b.max_dim) {
            for &q in &b.aut_qs {
                cases.push((m.clone(), q));
            }
        }
    }
    run_cases("automorphism counts", 8, &cases, |(m, q)| {
        expect_eq(&format!("|Aut {m}| over F_{q}"), brute_force_aut_count(m, *q).map_err(err)?, aut_order(m, *q))
    })
}

pub fn crystal_laws(b: &Bounds) -> CheckResult {
    let mut cases = Vec::new();
    for ring in b.cyclic_rings() {
        let n = ring.modulus().expect("cyclic") as i64;
        for m in enumerate::up_to(ring, b.max_degree) {
            for i in 0..n {
                cases.push((m.clone(), i));
            }
        }
    }
    if b.integers {
        let d = b.max_degree as i64;
        for m in enumerate::integer_up_to(b.max_degree) {
            for i in -1..=d {
                cases.push((m.clone(), i));
            }
        }
    }
    run_cases("crystal laws", 9, &cases, |(m, i)| {
        let i = *i;
        let up = f_tilde(m, i);
        if e_tilde(&up, i).as_ref() != Some(m) {
            return Err(format!("e_{i} f_{i} ({m}) is not {m}"));
        }
        if let Some(down) = e_tilde(m, i) {
            expect_eq(&format!("f_{i} e_{i} ({m})"), &f_tilde(&down, i), m)?;
        }
        if m.ring().is_cyclic() {
            if m.is_aperiodic().map_err(err)? && !up.is_aperiodic().map_err(err)? {
                return Err(format!("f_{i} ({m}) = {up} is not aperiodic"));
            }
            let lifted = embed_phi(m, i).map_err(err)?;
            expect_eq(
                &format!("phi_{i} f_{i} ({m})"),
                embed_phi(&up, i).map_err(err)?,
                f_tilde(&lifted, m.ring().norm(i)),
            )?;
        }
        Ok(())
    })
}

/// Component of the empty multisegment over `Z/3` in degrees 0 to 3.
pub fn component_counts() -> CheckResult {
    let start = Instant::now();
    let want = vec![1usize, 3, 9, 21];
    let (passed, failures) = match crystal_graph(VertexRing::Cyclic(3), 3, Component::Empty) {
        Ok(g) => {
            let got = g.counts_by_degree();
            if got == want {
                (true, vec![])
            } else {
                (false, vec![format!("counts {got:?}, expected {want:?}")])
            }
        }
        Err(e) => (false, vec![err(e)]),
    };
    CheckResult {
        name: "component counts".into(),
        criterion: Some(9),
        passed,
        cases: 4,
        failed: failures.len(),
        failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn canonical_basis_check(b: &Bounds) -> CheckResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for &(n, top) in &b.canonical {
        let ring = VertexRing::Cyclic(n);
        let mut primary = CanonicalBasis::new(ring, Schedule::Primary);
        let mut alternate = CanonicalBasis::new(ring, Schedule::Alternate);
        for t in 0..=top {
            for d in enumerate::cyclic_degree_vectors(n, t) {
                let tables = primary.table(&d).and_then(|a| Ok((a, alternate.table(&d)?, primary.table(&d.negated(ring))?)));
                let (a, alt, image) = match tables {
                    Ok(x) => x,
                    Err(e) => {
                        failures.push(format!("Z/{n} degree {d}: {}", err(e)));
                        continue;
                    }
                };
                cases += a.len();
                for m in &a.order {
                    if a.get(m) != alt.get(m) {
                        failures.push(format!("Z/{n}: b_{m} depends on the schedule"));
                    }
                }
                match sharp_on_canonical(&a, &image) {
                    Ok(r) => {
                        failures.extend(r.sharp_mismatches.iter().map(|s| format!("Z/{n}: sharp {s}")));
                        failures.extend(r.relabel_mismatches.iter().map(|s| format!("Z/{n}: relabel {s}")));
                    }
                    Err(e) => failures.push(format!("Z/{n} degree {d}: {}", err(e))),
                }
            }
        }
    }
    let failed = failures.len();
    failures.truncate(MAX_REPORTED);
    CheckResult {
        name: "canonical basis".into(),
        criterion: Some(10),
        passed: failed == 0,
        cases,
        failed,
        failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn geometric_dual(b: &Bounds) -> CheckResult {
    let mut cases = Vec::new();
    for ring in b.cyclic_rings() {
        cases.extend(vertices(ring, b.max_degree));
    }
    if b.integers {
        cases.extend(vertices(VertexRing::Integers, b.integer_geometry_degree));
    }
    let seed = b.seed;
    run_cases("geometric dual", 11, &cases, |m| {
        let want = if m.ring().is_cyclic() { tau(m) } else { mw_dual(m) }.map_err(err)?;
        expect_eq(&format!("generic commutant dual of {m}"), generic_commutant_dual(m, seed).map_err(err)?, want)
    })
}

/// Random multisegment with total degree in `lo..=hi`.
fn random_multisegment(ring: VertexRing, lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> Multisegment {
    let target = rng.gen_range(lo..=hi);
    let mut m = Multisegment::empty(ring);
    let span = match ring {
        VertexRing::Cyclic(n) => n as i64,
        VertexRing::Integers => 5,
    };
    while m.total_degree() < target {
        let len = rng.gen_range(1..=(target - m.total_degree()).min(4));
        m.add_head(len, rng.gen_range(0..span), 1);
    }
    m
}

pub fn round_trip(b: &Bounds) -> CheckResult {
    let mut cases: Vec<Multisegment> = Vec::new();
    for ring in b.all_rings() {
        cases.extend(enumerate::up_to(ring, b.max_degree));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed ^ 0x5eed);
    let rings = b.all_rings();
    if !rings.is_empty() {
        for _ in 0..b.round_trip_random {
            let ring = rings[rng.gen_range(0..rings.len())];
            cases.push(random_multisegment(ring, b.max_degree + 1, b.max_degree + 6, &mut rng));
        }
    }
    run_cases("round trip", 12, &cases, |m| {
        expect_eq(&format!("classify(realize({m})) over Q"), &classify(&realize(m, &Rationals)).map_err(err)?, m)?;
        let f2 = GaloisField::new(2).map_err(err)?;
        expect_eq(&format!("classify(realize({m})) over F_2"), &classify(&realize(m, &f2)).map_err(err)?, m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Bounds {
        Bounds::quick().cap_degree(3)
    }

    #[test]
    fn quick_suites_pass_at_small_degree() {
        for suite in ["involution", "mullineux", "crystal", "canonical", "geometry"] {
            let report = run_suite(suite, &tiny()).unwrap();
            assert!(report.passed(), "{}", report.to_text());
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &tiny()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn evaluation_in_q() {
        // v^{-1} [2] = 1 + v^{-2}
        let c = LaurentPoly::from_terms([(0, 1), (-2, 1)]);
        assert_eq!(evaluate_in_q(&c, 0, 3), Some(4));
        assert_eq!(evaluate_in_q(&LaurentPoly::v_pow(1), 0, 3), None);
    }

    #[test]
    fn ring_restriction() {
        let b = Bounds::full().only_ring(VertexRing::Cyclic(3));
        assert_eq!(b.cyclic, vec![3]);
        assert!(!b.integers);
        assert_eq!(b.canonical, vec![(3, 4)]);
    }
}
