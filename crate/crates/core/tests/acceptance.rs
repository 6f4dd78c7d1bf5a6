//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::time::Instant;

use ditbell::bellpoly::{
    bowtie, classify_orbits, compact_form_check, enumerate_functions, polynomial_of,
    BellPolynomial, DitFunction, SymmetryGroup,
};
use ditbell::polytope::{self, Convention, Strategy, Verdict};
use ditbell::quantum::{self, ComplexMatrix, StateVector};
use ditbell::{dft, CycMatrix, CycNum, Cyclotomic, Params};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p(d: u32, n: u32) -> Params {
    Params::new(d, n).unwrap()
}

fn z3() -> Cyclotomic {
    Cyclotomic::new(3).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// The four real representatives printed for `H_{3,2}`, as
/// `(r1, r2, coefficient)` with `A1^(2-r1) B1^r1 A2^(2-r2) B2^r2`.
fn printed_real_representatives() -> Vec<Vec<(u32, u32, i64)>> {
    vec![
        vec![(0, 0, 9)],
        vec![(0, 0, 3), (0, 2, -3), (1, 1, 6), (1, 2, 3), (2, 0, -3), (2, 1, 3)],
        vec![(0, 1, -3), (0, 2, 3), (1, 0, 3), (1, 2, 6), (2, 0, -3), (2, 1, 3)],
        vec![(0, 0, 6), (0, 1, -3), (0, 2, -3), (1, 0, 3), (1, 1, 3), (1, 2, 3)],
    ]
}

fn counts() -> Outcome {
    ensure(enumerate_functions(p(3, 1), 1 << 26).unwrap().count() == 27, "27 at (3,1)")?;
    let params = p(3, 2);
    ensure(enumerate_functions(params, 1 << 26).unwrap().count() == 19683, "19683 at (3,2)")?;
    let start = Instant::now();
    let group = SymmetryGroup::census(params);
    let table = classify_orbits(&group, 1 << 26).map_err(|e| e.to_string())?;
    let s = table.summary(&group).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(s.real == 81, format!("real count {}", s.real))?;
    ensure(s.orbits == 243, format!("orbit count {}", s.orbits))?;
    ensure(s.real_orbits == 4, format!("real orbits {}", s.real_orbits))?;
    let ring = z3();
    let mut ids = HashSet::new();
    for rep in printed_real_representatives() {
        let mut coeffs = vec![ring.zero(); 9];
        for (r1, r2, k) in rep {
            coeffs[(r1 + 3 * r2) as usize] = ring.int(k);
        }
        let poly = BellPolynomial::new(params, coeffs).map_err(|e| e.to_string())?;
        let f = poly.generating_function().unwrap();
        ensure(table.is_real(f.index()), "printed representative is not real")?;
        ids.insert(table.orbit_of(f.index()).id);
    }
    ensure(ids.len() == 4, format!("printed representatives meet {} orbits", ids.len()))?;
    ensure(elapsed < 60.0, format!("classification took {elapsed:.1}s"))?;
    Ok(format!(
        "27 / 19683 / 81 real / 243 orbits / 4 real orbits ({} restricted), {elapsed:.2}s",
        s.real_orbits_restricted
    ))
}

fn dft_fidelity() -> Outcome {
    let ring = z3();
    let h3 = [[0, 0, 0], [0, 1, 2], [0, 2, 1]];
    let h9 = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 2, 0, 1, 2, 0, 1, 2],
        [0, 2, 1, 0, 2, 1, 0, 2, 1],
        [0, 0, 0, 1, 1, 1, 2, 2, 2],
        [0, 1, 2, 1, 2, 0, 2, 0, 1],
        [0, 2, 1, 1, 0, 2, 2, 1, 0],
        [0, 0, 0, 2, 2, 2, 1, 1, 1],
        [0, 1, 2, 2, 0, 1, 1, 2, 0],
        [0, 2, 1, 2, 1, 0, 1, 0, 2],
    ];
    let m3 = dft::build_matrix(&p(3, 1), 1024).unwrap();
    let m9 = dft::build_matrix(&p(3, 2), 1024).unwrap();
    ensure(m3 == CycMatrix::from_fn(3, |i, j| ring.root(h3[i][j])), "H_3 differs")?;
    ensure(m9 == CycMatrix::from_fn(9, |i, j| ring.root(h9[i][j])), "H_3^{⊗2} differs")?;
    for (m, dim) in [(&m3, 3), (&m9, 9)] {
        let gram = m.adjoint().checked_mul(m).unwrap();
        ensure(
            gram == CycMatrix::identity(ring, dim).scale(&ring.int(dim as i64)),
            "H*H != D I",
        )?;
    }
    let mut trips = 0;
    for params in [p(3, 1), p(3, 2)] {
        for f in enumerate_functions(params, 1 << 26).unwrap() {
            let values = f.values().unwrap();
            let back = dft::idft(&dft::dft(&values, &params).unwrap(), &params).unwrap();
            ensure(back == values, format!("round trip fails for {:?}", f.exponents()))?;
            trips += 1;
        }
    }
    Ok(format!("H_3 and H_3^(⊗2) match entrywise, H*H = DI, {trips} round trips"))
}

fn spectrum_reproduction() -> Outcome {
    let ring = z3();
    let (one, w, w2) = (ring.one(), ring.root(1), ring.root(2));
    let f = DitFunction::new(p(3, 1), vec![1, 2, 2]).unwrap();
    let hat = f.spectrum().unwrap();
    ensure(hat == vec![&w2 - &one, &w - &w2, &w - &w2], format!("f̂ = {hat:?}"))?;
    let printed = [
        [&w - &w2, &w2 - &one, &one - &w],
        [&w - &w2, &one - &w, &w2 - &one],
        [&w2 - &one, &w2 - &one, &w2 - &one],
    ];
    let q = quantum::build_q_exact(&f, 1024).unwrap();
    ensure(q == CycMatrix::from_fn(3, |i, j| printed[i][j].clone()), format!("Q_f =\n{q}"))?;

    // (3,2): 3((ω²-1) X²⊗XZ + (ω²-1) XZ⊗X² + (1-ω) Z²⊗Z²)
    let x = quantum::pauli::pauli_x_exact(ring);
    let z = quantum::pauli::pauli_z_exact(ring);
    let x2 = x.pow(2).unwrap();
    let xz = x.checked_mul(&z).unwrap();
    let z2 = z.pow(2).unwrap();
    let expected = x2
        .kron(&xz)
        .unwrap()
        .scale(&(&w2 - &one))
        .checked_add(&xz.kron(&x2).unwrap().scale(&(&w2 - &one)))
        .unwrap()
        .checked_add(&z2.kron(&z2).unwrap().scale(&(&one - &w)))
        .unwrap()
        .scale(&ring.int(3));
    let g = DitFunction::new(p(3, 2), vec![2, 1, 2, 1, 1, 0, 2, 0, 0]).unwrap();
    ensure(quantum::build_q_exact(&g, 1024).unwrap() == expected, "(3,2) Q_f differs")?;
    Ok("f̂ = (ω²-1, ω-ω², ω-ω²); both printed Q_f reproduced exactly".into())
}

fn violation_values() -> Outcome {
    let f = DitFunction::new(p(3, 1), vec![1, 2, 2]).unwrap();
    let q = quantum::build_q(&f, 1024).unwrap();
    let c1 = c(-2.0 / 3.0, 0.0);
    let s = StateVector::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
    let v1 = quantum::expectation(&s, &q, c1).unwrap();
    ensure((v1 - 19.0 / 14.0).abs() <= 1e-12, format!("19/14 state gives {v1}"))?;
    let w = omega();
    let s2 = StateVector::new(vec![44.0 + 50.0 * w, 76.0 + 9.0 * w, 143.0 + 17.0 * w]).unwrap();
    let v2 = quantum::expectation(&s2, &q, c1).unwrap();
    ensure((v2 - 1.53208).abs() <= 5e-5, format!("explicit state gives {v2}"))?;
    let b1 = quantum::violation_bound(&f, Convention::Regauged, 1024).unwrap().bound;
    ensure((b1 - 1.532089).abs() <= 1e-4, format!("bound {b1}"))?;

    let params = p(3, 2);
    let g = DitFunction::new(params, vec![2, 1, 2, 1, 1, 0, 2, 0, 0]).unwrap();
    let b2 = quantum::violation_bound(&g, Convention::Regauged, 1024).unwrap().bound;
    ensure((b2 - 3.0).abs() <= 1e-6, format!("(3,2) bound {b2}"))?;
    let mut amps = vec![c(0.0, 0.0); 9];
    amps[StateVector::basis_index(&params, &[0, 1])] = c(1.0, 0.0);
    amps[StateVector::basis_index(&params, &[1, 0])] = c(1.0, 0.0);
    amps[StateVector::basis_index(&params, &[2, 2])] = w;
    let psi = StateVector::new(amps).unwrap();
    let q2 = quantum::build_q(&g, 1024).unwrap();
    let v3 = quantum::expectation(&psi, &q2, c(-2.0 / 9.0, 0.0)).unwrap();
    ensure((v3 - b2).abs() <= 1e-9, format!("state attains {v3}, bound {b2}"))?;
    Ok(format!("{v1:.12}, {v2:.6}, bound {b1:.6}, (3,2) bound {b2:.9} attained by state ({v3:.9})"))
}

fn eigenvalue_certificates() -> Outcome {
    let zeta = Complex64::from_polar(1.0, 2.0 * PI / 9.0);
    let w = omega();
    let f = DitFunction::new(p(3, 1), vec![1, 2, 2]).unwrap();
    let q = quantum::build_q(&f, 1024).unwrap();
    for lambda in [-3.0 * zeta, -3.0 * zeta * w, -3.0 * zeta * w * w] {
        ensure(quantum::eigenvalue_certificate(&q, lambda), format!("{lambda} at (3,1)"))?;
    }
    let g = DitFunction::new(p(3, 2), vec![2, 1, 2, 1, 1, 0, 2, 0, 0]).unwrap();
    let q2 = quantum::build_q(&g, 1024).unwrap();
    let one = c(1.0, 0.0);
    for lambda in [9.0 * (one - w), 9.0 * (w * w - one), 9.0 * (w - w * w), c(0.0, 0.0)] {
        ensure(quantum::eigenvalue_certificate(&q2, lambda), format!("{lambda} at (3,2)"))?;
    }
    // a value that is not an eigenvalue must be rejected
    ensure(!quantum::eigenvalue_certificate(&q, c(1.0, 0.0)), "1 accepted at (3,1)")?;
    Ok("-3ζω^j at (3,1); 9(1-ω), 9(ω²-1), 9(ω-ω²), 0 at (3,2)".into())
}

fn facet_tightness() -> Outcome {
    let mut report = Vec::new();
    for params in [p(3, 1), p(3, 2)] {
        let vs = polytope::vertices(&params, 1024).unwrap();
        let vecs: Vec<_> = vs.iter().map(|v| v.vector(&params)).collect();
        let mut saturation = HashSet::new();
        for f in enumerate_functions(params, 1 << 26).unwrap() {
            let facet = polytope::facet_vector(&f, Convention::Raw).unwrap();
            let mut best = f64::NEG_INFINITY;
            let mut sat = 0;
            for xi in &vecs {
                let v = facet.evaluate(xi).unwrap();
                ensure(v <= 1.0 + 1e-9, format!("{:?} exceeds 1 with {v}", f.exponents()))?;
                best = best.max(v);
                sat += ((v - 1.0).abs() <= 1e-9) as usize;
            }
            ensure((best - 1.0).abs() <= 1e-9, format!("{:?} max {best}", f.exponents()))?;
            saturation.insert(sat);
        }
        if params.n() == 1 {
            ensure(saturation == HashSet::from([6]), format!("saturation counts {saturation:?}"))?;
        }
        report.push(format!("({}, {}) saturation {:?}", params.d(), params.n(), saturation));
    }
    Ok(report.join("; "))
}

fn lhv_soundness() -> Outcome {
    let params = p(3, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut verdicts = [0usize; 2];
    for _ in 0..1000 {
        let k = rng.gen_range(1..=9);
        let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..1.0) + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let mut strategies: Vec<Strategy> = raw
            .iter()
            .map(|w| Strategy {
                a: vec![rng.gen_range(0..3)],
                b: vec![rng.gen_range(0..3)],
                weight: w / total,
            })
            .collect();
        let drift = 1.0 - strategies.iter().map(|s| s.weight).sum::<f64>();
        strategies[0].weight += drift;
        let xi = polytope::lhv_sample(&params, &strategies).map_err(|e| e.to_string())?;
        let m = polytope::membership(&xi, Convention::Raw, 1 << 26).unwrap();
        match m.verdict {
            Verdict::Inside => verdicts[0] += 1,
            Verdict::Boundary => verdicts[1] += 1,
            Verdict::Outside => return Err(format!("mixture outside with {}", m.worst_value)),
        }
    }
    let f = DitFunction::new(params, vec![1, 2, 2]).unwrap();
    let rep = quantum::violation_bound(&f, Convention::Regauged, 1024).unwrap();
    let xi = quantum::correlation_vector_of_state(&rep.optimal_state, &params).unwrap();
    let m = polytope::membership(&xi, Convention::Regauged, 1 << 26).unwrap();
    ensure(m.verdict == Verdict::Outside, "quantum correlations inside")?;
    ensure(
        (m.worst_value - 1.532089).abs() <= 1e-4,
        format!("quantum worst value {}", m.worst_value),
    )?;
    Ok(format!(
        "1000 mixtures: {} inside, {} boundary; quantum vector outside at {:.6}",
        verdicts[0], verdicts[1], m.worst_value
    ))
}

/// All distinct `λ` with `det(M - λ) = 0` among `candidates`.
fn certified(m: &ComplexMatrix, candidates: &[Complex64]) -> usize {
    candidates
        .iter()
        .filter(|&&l| quantum::eigenvalue_certificate(m, l))
        .count()
}

fn pauli_identities() -> Outcome {
    let mut checked = 0;
    for d in [2u32, 3, 5] {
        let (x, z) = (quantum::pauli_x(d), quantum::pauli_z(d));
        let w = Complex64::from_polar(1.0, 2.0 * PI / d as f64);
        let id = ComplexMatrix::identity(d as usize);
        ensure(z.matmul(&x).max_abs_diff(&x.matmul(&z).scale(w)) <= 1e-12, format!("ZX at d={d}"))?;
        ensure(x.pow(d).max_abs_diff(&id) <= 1e-12, format!("X^d at d={d}"))?;
        ensure(z.pow(d).max_abs_diff(&id) <= 1e-12, format!("Z^d at d={d}"))?;
        for k in 0..d {
            let m = x.matmul(&z.pow(k));
            // distinct certified eigenvalues of a d×d matrix are its spectrum
            let claimed = quantum::xz_eigenvalues(d, k);
            ensure(certified(&m, &claimed) == d as usize, format!("spectrum of XZ^{k}, d={d}"))?;
            for e in 0..d {
                let lhs = m.pow(e);
                let phase = Complex64::from_polar(1.0, 2.0 * PI * (k * e * e.saturating_sub(1) / 2) as f64 / d as f64);
                let rhs = x.pow(e).matmul(&z.pow(k * e)).scale(phase);
                ensure(lhs.max_abs_diff(&rhs) <= 1e-12, format!("power identity d={d} k={k} e={e}"))?;
                ensure(quantum::pauli_power_identity(d, k, e), format!("library identity d={d} k={k} e={e}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("d ∈ {{2, 3, 5}}: commutation, order, spectra, {checked} power identities"))
}

fn compact_form() -> Outcome {
    let ring = z3();
    let family: HashSet<Vec<CycNum>> = enumerate_functions(p(3, 1), 27)
        .unwrap()
        .map(|f| polynomial_of(&f).unwrap().coeffs().to_vec())
        .collect();
    let mut formula = HashSet::new();
    for u in 0..3 {
        for v in 0..3 {
            for m in 0..3 {
                let vm1 = ring.root(v) - ring.one();
                let coeffs: Vec<CycNum> = (0..3)
                    .map(|r| {
                        let three_m = if r == m { ring.int(3) } else { ring.zero() };
                        ring.root(u) * (three_m + &vm1)
                    })
                    .collect();
                formula.insert(coeffs);
            }
        }
    }
    ensure(family == formula, "sets differ")?;
    ensure(compact_form_check().unwrap(), "library check disagrees")?;
    Ok(format!("{} polynomials, formula gives {}", family.len(), formula.len()))
}

fn bowtie_completeness() -> Outcome {
    let mut report = Vec::new();
    for (d, n) in [(2u32, 2u32), (3, 1)] {
        let lower: Vec<BellPolynomial> = enumerate_functions(p(d, n - 1), 1 << 20)
            .unwrap()
            .map(|f| polynomial_of(&f).unwrap())
            .collect();
        let mut built = HashSet::new();
        let combos = lower.len().pow(d);
        for mut k in 0..combos {
            let parts: Vec<BellPolynomial> = (0..d)
                .map(|_| {
                    let part = lower[k % lower.len()].clone();
                    k /= lower.len();
                    part
                })
                .collect();
            built.insert(bowtie(&parts).unwrap().coeffs().to_vec());
        }
        let family: HashSet<Vec<CycNum>> = enumerate_functions(p(d, n), 1 << 20)
            .unwrap()
            .map(|f| polynomial_of(&f).unwrap().coeffs().to_vec())
            .collect();
        ensure(built == family, format!("({d},{n}): {} built vs {}", built.len(), family.len()))?;
        report.push(format!("({d},{n}): {combos} combinations give all {}", family.len()));
    }
    Ok(report.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 counts", counts),
        ("2 dft fidelity", dft_fidelity),
        ("3 spectrum reproduction", spectrum_reproduction),
        ("4 violation values", violation_values),
        ("5 eigenvalue certificates", eigenvalue_certificates),
        ("6 facet tightness", facet_tightness),
        ("7 lhv soundness", lhv_soundness),
        ("8 pauli identities", pauli_identities),
        ("9 compact form", compact_form),
        ("10 bowtie completeness", bowtie_completeness),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = std::panic::catch_unwind(check)
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
