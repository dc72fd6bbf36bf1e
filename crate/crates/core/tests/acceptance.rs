//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

mod common;

use common::*;
use hgpforge::classical::{hamming_7_4, repetition_code, ClassicalCode};
use hgpforge::correctability::{is_correctable, Region};
use hgpforge::css::{alternative_representative, brute_distance, kunneth_parameters, CssCode, PauliType};
use hgpforge::diaggate::{
    bk_cascade, hierarchy_level, preserves_codespace, transversal_nogo_harness, CircuitSupportModel, NoSpread,
    PhasePolynomial,
};
use hgpforge::f2la::BinaryMatrix;
use hgpforge::yesgo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::time::{Duration, Instant};

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_LIMIT: Duration = Duration::from_secs(120);
const C2_INSTANCES: usize = 50;
const C2_MAX_SEED_DIM: usize = 5;
const C2_BRUTE_MAX_N: usize = 30;
const C4_LIMIT: Duration = Duration::from_secs(60);
const C4_MAX_REGION: usize = 3;
const C6_LIMIT: Duration = Duration::from_secs(300);
const C6_MODULUS_LOG2: u32 = 3;
const C6_SAMPLES: usize = 100;
const C6_LEVEL_BOUND: u32 = 2;
const C7_LIMIT: Duration = Duration::from_secs(600);
const C8_SAMPLES: usize = 500;
const C8_MAX_NVARS: usize = 6;
const C8_MAX_M: u32 = 3;
const C10_CIRCUITS: usize = 50;
const C10_MAX_N: usize = 12;
const STATE_VECTOR_TOL: f64 = 1e-9;
const RNG_SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BinaryMatrix {
    let bits: Vec<bool> = (0..rows * cols).map(|_| rng.random_bool(0.5)).collect();
    BinaryMatrix::from_fn(rows, cols, |r, c| bits[r * cols + c])
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let code = toric(2, 3);
    let k_oracle = code.n() - rank(code.hx()) - rank(code.hz());
    let d = match brute_distance(&code) {
        Ok(d) => d,
        Err(e) => return outcome(false, format!("brute_distance failed: {e}")),
    };
    let kp = kunneth_parameters(code.complex().unwrap(), 1).unwrap();
    let elapsed = start.elapsed();
    let params = (code.n(), code.k(), d.d);
    let pass = params == (18, 2, 3)
        && k_oracle == 2
        && kp.k == 2
        && kp.d_x == Some(d.d_x)
        && kp.d_z == Some(d.d_z)
        && elapsed < C1_LIMIT;
    outcome(pass, format!("[[{}, {}, {}]], Künneth d_x={:?} d_z={:?}, {:?}", params.0, params.1, params.2, kp.d_x, kp.d_z, elapsed))
}

/// Random product instances shared by criteria 2 and 3.
fn criterion_2_instances() -> Vec<(Vec<BinaryMatrix>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut out = Vec::new();
    while out.len() < C2_INSTANCES {
        let t = rng.random_range(2..=3);
        let seeds: Vec<BinaryMatrix> = (0..t)
            .map(|_| {
                let m = rng.random_range(1..=C2_MAX_SEED_DIM);
                let n = rng.random_range(1..=C2_MAX_SEED_DIM);
                random_matrix(&mut rng, m, n)
            })
            .collect();
        for level in 1..t {
            out.push((seeds.clone(), level));
        }
    }
    out.truncate(C2_INSTANCES);
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut distance_checks = 0;
    for (i, (seeds, level)) in criterion_2_instances().iter().enumerate() {
        let code = product_code(seeds, *level);
        let k_oracle = code.n() - rank(code.hx()) - rank(code.hz());
        let kp = kunneth_parameters(code.complex().unwrap(), *level).unwrap();
        if kp.k != k_oracle || code.k() != k_oracle || kp.n != code.n() {
            return outcome(false, format!("instance {i}: Künneth k={} oracle k={k_oracle}", kp.k));
        }
        if k_oracle > 0 && code.n() <= C2_BRUTE_MAX_N {
            let d = brute_distance(&code).unwrap();
            if kp.d_x != Some(d.d_x) || kp.d_z != Some(d.d_z) {
                return outcome(
                    false,
                    format!("instance {i}: Künneth ({:?},{:?}) brute ({},{})", kp.d_x, kp.d_z, d.d_x, d.d_z),
                );
            }
            let naive_x = LogicalOracle::x(&code).min_weight(d.d_x, u64::MAX);
            let naive_z = LogicalOracle::z(&code).min_weight(d.d_z, u64::MAX);
            if naive_x != Some(d.d_x) || naive_z != Some(d.d_z) {
                return outcome(false, format!("instance {i}: naive oracle ({naive_x:?},{naive_z:?}) disagrees"));
            }
            distance_checks += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < C2_LIMIT,
        format!("{C2_INSTANCES} instances, k exact, {distance_checks} distance checks, {elapsed:?}"),
    )
}

fn criterion_3() -> Outcome {
    let mut reps = 0;
    for (i, (seeds, level)) in criterion_2_instances().iter().enumerate() {
        let code = product_code(seeds, *level);
        let basis = code.canonical_logical_basis().unwrap();
        let k = code.k();
        if basis.x_reps.len() != k || basis.z_reps.len() != k {
            return outcome(false, format!("instance {i}: basis size differs from k = {k}"));
        }
        let ox = LogicalOracle::x(&code);
        let oz = LogicalOracle::z(&code);
        for a in 0..k {
            let x = row_of(basis.x_reps[a].part());
            if !ox.is_nontrivial(&x) {
                return outcome(false, format!("instance {i}: X rep {a} is not a nontrivial logical"));
            }
            for b in 0..k {
                let z = row_of(basis.z_reps[b].part());
                if a == 0 && !oz.is_nontrivial(&z) {
                    return outcome(false, format!("instance {i}: Z rep {b} is not a nontrivial logical"));
                }
                let overlap = x.iter().zip(&z).filter(|(p, q)| **p && **q).count() % 2 == 1;
                if overlap != (a == b) {
                    return outcome(false, format!("instance {i}: pairing entry ({a},{b}) wrong"));
                }
            }
            reps += 2;
        }
    }
    outcome(true, format!("pairing = identity and all {reps} reps commute with stabilizers"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let code = toric(2, 3);
    let ox = LogicalOracle::x(&code);
    let oz = LogicalOracle::z(&code);
    let mut regions = 0;
    let mut not_correctable = 0;
    let mut failure = None;
    for size in 0..=C4_MAX_REGION {
        for_each_combination(code.n(), size, &mut |qs| {
            regions += 1;
            let region = Region::new(qs.iter().copied(), code.n()).unwrap();
            let verdict = is_correctable(&code, &region).unwrap();
            let mut oracle = false;
            for sub in 1..1usize << qs.len() {
                let s: Vec<usize> = (0..qs.len()).filter(|&j| (sub >> j) & 1 == 1).map(|j| qs[j]).collect();
                oracle |= ox.is_nontrivial_on(&s) || oz.is_nontrivial_on(&s);
            }
            let consistent = match (&verdict.witness, verdict.witness_type) {
                (None, None) => verdict.correctable && !oracle,
                (Some(w), Some(kind)) => {
                    let o = if kind == PauliType::X { &ox } else { &oz };
                    let part = row_of(w.part(kind));
                    let inside = w.support().iter().all(|q| qs.contains(q));
                    !verdict.correctable && oracle && inside && o.is_nontrivial(&part)
                }
                _ => false,
            };
            if !consistent {
                failure = Some(qs.to_vec());
                return false;
            }
            not_correctable += usize::from(!verdict.correctable);
            true
        });
        if failure.is_some() {
            break;
        }
    }
    let elapsed = start.elapsed();
    if let Some(r) = failure {
        return outcome(false, format!("region {r:?} violates the dichotomy"));
    }
    outcome(
        elapsed < C4_LIMIT && not_correctable > 0,
        format!("{regions} regions, {not_correctable} not correctable with verified witnesses, {elapsed:?}"),
    )
}

fn cleans_everything(code: &ClassicalCode, bound: usize) -> Result<usize, String> {
    let h = rows_of(code.parity_check());
    let span = Span::new(&h);
    let mut checked = 0;
    for size in 0..=bound {
        let mut err = None;
        for_each_combination(code.n(), size, &mut |gamma| {
            checked += 1;
            match code.classical_clean(gamma) {
                Ok(v) => {
                    let r = row_of(&v);
                    if !span.contains(&r) || gamma.iter().any(|&i| !r[i]) {
                        err = Some(format!("bad cleaner for {gamma:?}"));
                    }
                }
                Err(e) => err = Some(format!("{gamma:?}: {e}")),
            }
            err.is_none()
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(checked)
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for n in 1..=9 {
        match cleans_everything(&repetition_code(n), (n - 1) / 2) {
            Ok(c) => total += c,
            Err(e) => return outcome(false, format!("repetition n={n}: {e}")),
        }
    }
    match cleans_everything(&hamming_7_4(), 1) {
        Ok(c) => total += c,
        Err(e) => return outcome(false, format!("Hamming: {e}")),
    }
    outcome(true, format!("{total} sets cleaned (repetition n ≤ 9, Hamming [7,4,3])"))
}

/// First random two-seed product with k ≥ 1 and d ≥ 3 that is not a
/// product of cycles.
fn random_hgp_with_distance_3() -> CssCode {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    loop {
        let a = random_matrix(&mut rng, 4, 6);
        let b = random_matrix(&mut rng, 6, 4);
        let code = product_code(&[a, b], 1);
        if code.k() == 0 || code.n() > 60 {
            continue;
        }
        let kp = kunneth_parameters(code.complex().unwrap(), 1).unwrap();
        if kp.d().is_some_and(|d| d >= 3) && brute_distance(&code).unwrap().d >= 3 {
            return code;
        }
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, code) in [("toric-18", toric(2, 3)), ("random HGP", random_hgp_with_distance_3())] {
        match transversal_nogo_harness(&code, C6_MODULUS_LOG2, C6_SAMPLES, RNG_SEED) {
            Ok(r) => {
                pass &= r.max_level <= C6_LEVEL_BOUND && r.sample_levels.len() == C6_SAMPLES;
                details.push(format!(
                    "{name} [[{},{}]]: basis {} + {} samples, max level {}",
                    code.n(),
                    code.k(),
                    r.solution_basis.len(),
                    r.samples,
                    r.max_level
                ));
            }
            Err(e) => {
                pass = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(pass && elapsed < C6_LIMIT, format!("{}, {elapsed:?}", details.join("; ")))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for (t, l) in [(3, 2), (2, 3)] {
        let b = yesgo::build_bundle(t, l).unwrap();
        let inv = yesgo::verify_invariance(&b).unwrap();
        let r = yesgo::verify_logical_cnz(&b).unwrap();
        let physical = b.code.n() * b.copies;
        pass &= inv.preserves && r.ok && r.level as usize == t && hierarchy_level(&b.circuit) as usize == t;
        if t == 3 {
            pass &= physical == 72;
        }
        details.push(format!("t={t} L={l}: {physical} qubits, invariant {}, logical level {}", inv.preserves, r.level));
    }
    let elapsed = start.elapsed();
    outcome(pass && elapsed < C7_LIMIT, format!("{}, {elapsed:?}", details.join("; ")))
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> (PhasePolynomial, Vec<(Vec<u32>, u64)>, usize, u32) {
    let nvars = rng.random_range(1..=C8_MAX_NVARS);
    let m = rng.random_range(1..=C8_MAX_M);
    let mut f = PhasePolynomial::new(m, nvars).unwrap();
    for _ in 0..rng.random_range(0..=6) {
        let vars: Vec<usize> = (0..nvars).filter(|_| rng.random_bool(0.4)).collect();
        f.add_term(&vars, rng.random_range(0..1i64 << m)).unwrap();
    }
    let terms = f.terms().map(|(s, c)| (s.to_vec(), c)).collect();
    (f, terms, nvars, m)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut memo = HashMap::new();
    let mut by_level = [0usize; 10];
    for i in 0..C8_SAMPLES {
        let (f, terms, nvars, m) = random_polynomial(&mut rng);
        let table = truth_table(&terms, nvars, m);
        let oracle = hierarchy_level_by_differences(&table, nvars, m, &mut memo);
        let closed = hierarchy_level(&f);
        if oracle != closed {
            return outcome(false, format!("sample {i}: closed form {closed}, oracle {oracle} for {terms:?} mod 2^{m}"));
        }
        by_level[oracle as usize] += 1;
    }
    outcome(true, format!("{C8_SAMPLES} polynomials agree; level histogram {:?}", &by_level[..=8]))
}

fn criterion_9() -> Outcome {
    let code = toric(2, 3);
    let basis = code.canonical_logical_basis().unwrap();
    let model = CircuitSupportModel::transversal();
    let mut details = Vec::new();
    let mut pass = true;
    for rep in basis.x_reps.iter().chain(&basis.z_reps) {
        let home = rep.provenance.as_ref().unwrap().hyperplane.clone();
        let alt = match alternative_representative(&code, rep, &[home]) {
            Ok(a) => a,
            Err(e) => return outcome(false, format!("no alternative representative: {e}")),
        };
        let r = bk_cascade(&code, &[rep.op.clone(), alt], &model, &NoSpread).unwrap();
        pass &= r.first_correctable == Some(2) && r.steps[1].bound.is_empty();
    }
    details.push(format!("two-rep strategy ends at j=2 for all {} reps", 2 * basis.k()));
    for (i, x) in basis.x_reps.iter().enumerate() {
        let z = &basis.z_reps[i];
        let r = bk_cascade(&code, &[x.op.clone(), z.op.clone()], &model, &NoSpread).unwrap();
        let crossing: Vec<usize> = x.part().ones().filter(|&q| z.part().get(q)).collect();
        pass &= crossing.len() == 1
            && r.first_correctable == Some(2)
            && r.steps[1].bound == crossing
            && r.steps[1].correctable;
        details.push(format!("X{i}/Z{i} cross at {:?}", r.steps.last().map(|s| &s.bound)));
    }
    outcome(pass, details.join("; "))
}

fn criterion_10_codes() -> Vec<(&'static str, CssCode)> {
    let iceberg = CssCode::new(BinaryMatrix::from_strs(&["1111"]), BinaryMatrix::from_strs(&["1111"])).unwrap();
    let ham = BinaryMatrix::from_strs(&["1010101", "0110011", "0001111"]);
    let steane = CssCode::new(ham.clone(), ham).unwrap();
    let path2 = BinaryMatrix::from_strs(&["11"]);
    let mut codes = vec![
        ("[[4,2,2]]", iceberg),
        ("Steane", steane),
        ("toric L=2", toric(2, 2)),
        ("path product", product_code(&[path2.clone(), path2.transpose()], 1)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED + 10);
    while codes.len() < 6 {
        let dims: Vec<usize> = (0..4).map(|_| rng.random_range(1..=3)).collect();
        let a = random_matrix(&mut rng, dims[0], dims[1]);
        let b = random_matrix(&mut rng, dims[2], dims[3]);
        let code = product_code(&[a, b], 1);
        if code.n() <= C10_MAX_N && code.k() > 0 {
            codes.push(("random HGP", code));
        }
    }
    codes
}

/// Random diagonal circuit on `code`: half the time built from operators
/// that should preserve the codespace (Z logicals and stabilizers with
/// coefficient 2^{m−1}, plus transversal solutions), otherwise with a random
/// perturbation.
fn random_circuit(code: &CssCode, rng: &mut ChaCha8Rng, m: u32) -> PhasePolynomial {
    let n = code.n();
    let half = 1i64 << (m - 1);
    let mut f = PhasePolynomial::new(m, n).unwrap();
    let zl = code.logical_basis().unwrap().matrix(PauliType::Z);
    let hz = code.hz();
    for _ in 0..rng.random_range(0..=3) {
        let row = if rng.random_bool(0.5) && zl.rows() > 0 {
            zl.row(rng.random_range(0..zl.rows()))
        } else {
            hz.row(rng.random_range(0..hz.rows()))
        };
        for q in row.ones() {
            f.add_term(&[q], half).unwrap();
        }
    }
    if rng.random_bool(0.5) {
        let kind = rng.random_range(0..3);
        match kind {
            0 => {
                let q = rng.random_range(0..n);
                f.add_term(&[q], rng.random_range(1..1i64 << m)).unwrap();
            }
            1 => {
                let a = rng.random_range(0..n);
                let b = (a + rng.random_range(1..n)) % n;
                f.add_term(&[a, b], half).unwrap();
            }
            _ => {
                for q in 0..n {
                    f.add_term(&[q], rng.random_range(0..1i64 << m)).unwrap();
                }
            }
        }
    }
    f
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut agree = 0;
    let mut preserving = 0;
    let codes = criterion_10_codes();
    for (name, code) in &codes {
        for c in 0..C10_CIRCUITS {
            let m = rng.random_range(1..=3);
            let f = random_circuit(code, &mut rng, m);
            let terms: Vec<(Vec<u32>, u64)> = f.terms().map(|(s, c)| (s.to_vec(), c)).collect();
            let table = truth_table(&terms, code.n(), m);
            let oracle = preserves_by_state_vector(code, &table, m, STATE_VECTOR_TOL);
            let symbolic = preserves_codespace(&f, code, 1).unwrap().preserves;
            if oracle != symbolic {
                return outcome(false, format!("{name} circuit {c}: symbolic {symbolic}, state vector {oracle}"));
            }
            agree += 1;
            preserving += usize::from(oracle);
        }
    }
    outcome(
        true,
        format!("{agree} circuits on {} codes (n ≤ {C10_MAX_N}) agree, {preserving} preserving", codes.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("toric [[18,2,3]] parameters", criterion_1),
        ("Künneth consistency", criterion_2),
        ("canonical basis pairing", criterion_3),
        ("cleaning dichotomy", criterion_4),
        ("classical cleaning", criterion_5),
        ("transversal no-go harness", criterion_6),
        ("yes-go controlled-Z", criterion_7),
        ("hierarchy-level oracle", criterion_8),
        ("commutator cascade replay", criterion_9),
        ("symbolic vs state vector", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = std::panic::catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name} ({}) [{:.2?}]", i + 1, o.detail, start.elapsed());
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
