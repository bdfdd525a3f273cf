//! End-to-end acceptance run over the worked examples and the corpus.
//! Prints one PASS/FAIL line per criterion and exits non-zero on failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homtorsion::complex::{check_ac_admissible, check_integrable, split_diagnostics, ComplexError};
use homtorsion::examples::{gl3_sandwich_factors, sphere_family, sphere_pair};
use homtorsion::exact::{rat, vector, GaussianRational, Rational, Subspace};
use homtorsion::harness::{
    convergence_ratio, operator_demo, pirel_residual, run_harness, sample_point, translation_demo, HarnessConfig,
    MatrixModel, CONVERGENCE_RANGE, CONVERGENCE_STEP,
};
use homtorsion::nijenhuis::{
    check_nijenhuis, check_nijenhuis_ad, check_nijenhuis_with_mode, corollary_oneof_property, torsion_form, TorsionMode,
};
use homtorsion::operators::{admissible_ad_elements, check_admissible, operator_ad, operator_sandwich, HomogeneousPair, LinearOperator};
use homtorsion::specfile::{parse, resolve, serialize, ErrorKind, ResolvedSpec};

type Outcome = Result<String, String>;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

struct CorpusFile {
    name: String,
    text: String,
    spec: ResolvedSpec,
}

fn load_corpus() -> Vec<CorpusFile> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "lie"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable corpus file");
            let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            let spec = resolve(&doc).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            CorpusFile {
                name: p.file_name().unwrap().to_string_lossy().into_owned(),
                text,
                spec,
            }
        })
        .collect()
}

/// Every (file, pair, operator) with the operator living on the pair's algebra.
fn cases(corpus: &[CorpusFile]) -> Vec<(String, &HomogeneousPair, &LinearOperator)> {
    let mut out = Vec::new();
    for f in corpus {
        for pair in f.spec.pairs.values() {
            for (name, op) in f.spec.operators_on(pair) {
                out.push((format!("{}:{}/{}", f.name, pair.name(), name), pair, op));
            }
        }
    }
    out
}

fn admissible(pair: &HomogeneousPair, op: &LinearOperator) -> bool {
    check_admissible(pair, op).map(|r| r.holds).unwrap_or(false)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x, 1)).collect()
}

fn close(actual: &nalgebra::DMatrix<f64>, expected: &[f64], tol: f64) -> bool {
    actual.len() == expected.len() && actual.iter().zip(expected).all(|(a, b)| (a - b).abs() <= tol)
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.random_range(-4..=4), rng.random_range(1..=3))
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let model = MatrixModel::from_pair(&sphere_pair()).map_err(|e| e.to_string())?;
    let demo = translation_demo(&model).ok_or("no sphere demonstration")?;
    ensure(close(&demo.translated, &[1.0, 0.0, 0.0], 1e-12), || {
        format!("g·X(p0) = {:?}", demo.translated.as_slice())
    })?;
    ensure(close(&demo.evaluated, &[-1.0, 0.0, 0.0], 1e-12), || {
        format!("X(g·p0) = {:?}", demo.evaluated.as_slice())
    })?;
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("g·X(p0) = (1,0,0), X(g·p0) = (-1,0,0) in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let started = Instant::now();
    let pair = sphere_pair();
    let model = MatrixModel::from_pair(&pair).map_err(|e| e.to_string())?;
    let op = operator_ad(pair.algebra(), &q(&[1, 0, 0])).map_err(|e| e.to_string())?;
    let demo = operator_demo(&model, &model.operator(&op), 1.0)
        .map_err(|e| e.to_string())?
        .ok_or("no sphere demonstration")?;
    ensure(close(&demo.bundle_value, &[1.0, 0.0, 0.0], 1e-12), || {
        format!("(N X)(g·p0) = {:?}", demo.bundle_value.as_slice())
    })?;
    ensure(close(&demo.field_of_image, &[1f64.cos(), 0.0, 0.0], 1e-12), || {
        format!("X^(Iv)(g·p0) = {:?}", demo.field_of_image.as_slice())
    })?;
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("(N X)(g·p0) = (1,0,0), X^(Iv)(g·p0) = (cos 1,0,0) in {elapsed:?}"))
}

fn criterion_3() -> Outcome {
    let pair = sphere_pair();
    let mut count = 0;
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                let op = sphere_family(pair.algebra(), rat(a, 1), rat(b, 1), rat(c, 1));
                let holds = check_admissible(&pair, &op).map_err(|e| e.to_string())?.holds;
                ensure(holds == (c == -b), || format!("(α,β,γ) = ({a},{b},{c}): admissible = {holds}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} grid points, admissible exactly when γ = -β"))
}

fn criterion_4(corpus: &[CorpusFile]) -> Outcome {
    let pair = sphere_pair();
    let values = [rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 3), rat(1, 1), rat(2, 1)];
    let mut family = 0;
    for a in &values {
        for b in &values {
            let op = sphere_family(pair.algebra(), a.clone(), b.clone(), -b.clone());
            let r = check_nijenhuis(&pair, &op).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("family (α,β) = ({a},{b}) not Nijenhuis"))?;
            family += 1;
        }
    }

    let gl3 = corpus.iter().find(|f| f.name == "gl3.lie").ok_or("gl3.lie missing")?;
    let group = &gl3.spec.pairs["gl3_group"];
    let op = &gl3.spec.operators["sandwich"];
    let (a, b) = gl3_sandwich_factors();
    let reference = operator_sandwich(group.algebra(), &a, &b).map_err(|e| e.to_string())?;
    ensure(reference.matrix() == op.matrix(), || "corpus sandwich differs from A·X·B".into())?;
    let r = check_nijenhuis(group, op).map_err(|e| e.to_string())?;
    ensure(!r.holds, || "A·X·B reported Nijenhuis".into())?;
    let w = r.witness.ok_or("no witness")?;
    let recomputed = torsion_form(op, &w.v, &w.w).map_err(|e| e.to_string())?;
    ensure(recomputed == w.value, || "witness value does not match torsion_form".into())?;
    ensure(!group.k().contains(&recomputed).map_err(|e| e.to_string())?, || "witness value lies in 𝔨".into())?;
    let labels = group.algebra().labels();
    Ok(format!(
        "{family} family operators Nijenhuis; A·X·B fails with β({}, {}) = {}",
        homtorsion::lie::format_combination(labels, &w.v),
        homtorsion::lie::format_combination(labels, &w.w),
        homtorsion::lie::format_combination(labels, &w.value)
    ))
}

fn criterion_5() -> Outcome {
    let pair = sphere_pair();
    let j = operator_ad(pair.algebra(), &q(&[1, 0, 0])).map_err(|e| e.to_string())?;
    let r = check_integrable(&pair, &j).map_err(|e| e.to_string())?;
    let g = |re: i64, im: i64| GaussianRational::new(rat(re, 1), rat(im, 1));
    let expected = Subspace::span(3, &[vec![g(1, 0), g(0, 0), g(0, 0)], vec![g(0, 0), g(1, 0), g(0, 1)]])
        .map_err(|e| e.to_string())?;
    ensure(r.z_plus == expected, || format!("Z+ has basis {:?}", r.z_plus.basis_vectors()))?;
    ensure(r.z_plus_closed && r.integrable() && r.verdicts_agree, || "sphere J not integrable".into())?;

    let betas = [rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1)];
    for alpha in [rat(-1, 1), rat(0, 1), rat(2, 1)] {
        for beta in &betas {
            let op = sphere_family(pair.algebra(), alpha.clone(), beta.clone(), -beta.clone());
            let ac = check_ac_admissible(&pair, &op).map_err(|e| e.to_string())?;
            let expected = *beta == rat(1, 1) || *beta == rat(-1, 1);
            ensure(ac == expected, || format!("(α,β) = ({alpha},{beta}): almost complex = {ac}"))?;
        }
    }
    Ok("Z+ = span{k0, e1 + i*e2}, closed; family almost complex exactly when β = ±1".into())
}

fn criterion_6(corpus: &[CorpusFile]) -> Outcome {
    let mut checked = Vec::new();
    for (name, pair, op) in cases(corpus) {
        if !admissible(pair, op) || !check_ac_admissible(pair, op).map_err(|e| e.to_string())? {
            continue;
        }
        let r = check_integrable(pair, op).map_err(|e| format!("{name}: {e}"))?;
        let nijenhuis = check_nijenhuis(pair, op).map_err(|e| format!("{name}: {e}"))?.holds;
        ensure(nijenhuis == r.z_plus_closed, || {
            format!("{name}: Nijenhuis {nijenhuis} but Z+ closed {}", r.z_plus_closed)
        })?;
        checked.push((name, r.z_plus_closed));
    }
    ensure(checked.len() >= 6, || format!("only {} almost complex cases", checked.len()))?;
    ensure(checked.iter().any(|(n, _)| n.starts_with("u4_grassmannian.lie:grassmannian/J")), || {
        "Grassmannian structure not among the cases".into()
    })?;
    let open = checked.iter().filter(|(_, c)| !c).count();
    Ok(format!(
        "{} almost complex cases agree ({} integrable, {open} not)",
        checked.len(),
        checked.len() - open
    ))
}

fn criterion_7(corpus: &[CorpusFile]) -> Outcome {
    let pool: Vec<_> = cases(corpus)
        .into_iter()
        .filter(|(_, pair, op)| pair.k().dim() > 0 && admissible(pair, op))
        .collect();
    ensure(!pool.is_empty(), || "no admissible case with nontrivial 𝔨".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for draw in 0..500 {
        let (name, pair, op) = &pool[draw % pool.len()];
        let n = pair.algebra().dim();
        let k_basis = pair.k().space().basis_vectors();
        let coeffs: Vec<Rational> = k_basis.iter().map(|_| random_rational(&mut rng)).collect();
        let z = vector::combine(n, &coeffs, &k_basis);
        let w: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let beta = torsion_form(*op, &z, &w).map_err(|e| e.to_string())?;
        let in_k = pair.k().contains(&beta).map_err(|e| e.to_string())?;
        let reported = corollary_oneof_property(pair, op, &z, &w).map_err(|e| e.to_string())?;
        ensure(in_k && reported, || {
            format!("{name}: β(z, w) ∉ 𝔨 for z = {z:?}, w = {w:?}")
        })?;
    }
    Ok(format!("500 draws over {} admissible cases, β(z, w) ∈ 𝔨 every time", pool.len()))
}

fn criterion_8(corpus: &[CorpusFile]) -> Outcome {
    let pair_named = |file: &str, pair: &str| -> Result<&HomogeneousPair, String> {
        corpus
            .iter()
            .find(|f| f.name == file)
            .and_then(|f| f.spec.pairs.get(pair))
            .ok_or_else(|| format!("{file}:{pair} missing"))
    };
    let pairs = [
        pair_named("u4_grassmannian.lie", "grassmannian")?,
        pair_named("sphere.lie", "sphere")?,
        pair_named("so3_group.lie", "rotations")?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut holds, mut fails) = (0, 0);
    for draw in 0..100 {
        let pair = pairs[draw % pairs.len()];
        let space = admissible_ad_elements(pair).map_err(|e| e.to_string())?;
        let basis = space.basis_vectors();
        let coeffs: Vec<Rational> = basis.iter().map(|_| random_rational(&mut rng)).collect();
        let d = vector::combine(pair.algebra().dim(), &coeffs, &basis);
        let op = operator_ad(pair.algebra(), &d).map_err(|e| e.to_string())?;
        let specialized = check_nijenhuis_ad(pair, &d).map_err(|e| e.to_string())?.holds;
        let generic = check_nijenhuis_with_mode(pair, &op, TorsionMode::AllPairs)
            .map_err(|e| e.to_string())?
            .holds;
        ensure(specialized == generic, || {
            format!("{}: d = {d:?}: specialized {specialized}, generic {generic}", pair.name())
        })?;
        if generic {
            holds += 1;
        } else {
            fails += 1;
        }
    }
    Ok(format!("100 admissible ad_d draws agree ({holds} Nijenhuis, {fails} not)"))
}

fn criterion_9(corpus: &[CorpusFile]) -> Outcome {
    let mut count = 0;
    for (name, pair, op) in cases(corpus) {
        if pair.m().is_none() || !admissible(pair, op) {
            continue;
        }
        let d = match split_diagnostics(pair, op) {
            Ok(d) => d,
            Err(ComplexError::NotSplitACAdmissible(_)) => continue,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        ensure(d.sum_is_all && d.intersection_is_kc && d.eigenspace_decomposition_holds, || {
            format!("{name}: {d:?}")
        })?;
        count += 1;
    }
    ensure(count > 0, || "no split almost complex case".into())?;
    Ok(format!("{count} split cases satisfy all three decompositions"))
}

fn criterion_10(corpus: &[CorpusFile]) -> Outcome {
    let started = Instant::now();
    let config = HarnessConfig {
        samples: 20,
        step: 1e-4,
        seed: 42,
        theta: 1.0,
    };
    let (mut run, mut skipped, mut nonzero) = (0, 0, 0);
    let mut worst: f64 = 0.0;
    for (name, pair, op) in cases(corpus) {
        if !admissible(pair, op) || MatrixModel::from_pair(pair).is_err() {
            skipped += 1;
            continue;
        }
        let r = run_harness(pair, op, &config).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.samples.len() == 20, || format!("{name}: {} samples", r.samples.len()))?;
        ensure(r.max_deviation <= 1e-5, || format!("{name}: deviation {:e}", r.max_deviation))?;
        if r.nijenhuis_exact {
            ensure(r.max_numerical_torsion <= 1e-5, || {
                format!("{name}: numerical torsion {:e} for a Nijenhuis operator", r.max_numerical_torsion)
            })?;
        } else if r.max_numerical_torsion > 1e-5 {
            nonzero += 1;
        }
        ensure(r.passed(), || format!("{name}: {:?}", r.failures))?;
        worst = worst.max(r.max_deviation);
        run += 1;
    }
    let ratio = convergence_ratio(CONVERGENCE_STEP).map_err(|e| e.to_string())?;
    ensure((CONVERGENCE_RANGE.0..=CONVERGENCE_RANGE.1).contains(&ratio), || {
        format!("convergence ratio {ratio}")
    })?;
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    ensure(run > 0, || "no case has a matrix model".into())?;
    Ok(format!(
        "{run} cases ({nonzero} with nonzero torsion, {skipped} without model or not admissible), max deviation {worst:.2e}, ratio {ratio:.3}, {elapsed:?}"
    ))
}

fn criterion_11() -> Outcome {
    let pair = sphere_pair();
    let model = MatrixModel::from_pair(&pair).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let p = sample_point(&model, &mut rng);
        let v: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let w: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..=1.0)).collect();
        worst = worst.max(pirel_residual(&model, &v, &w, &p, 1e-4).map_err(|e| e.to_string())?);
    }
    ensure(worst <= 1e-6, || format!("residual {worst:e}"))?;
    Ok(format!("50 samples, max residual {worst:.2e}"))
}

fn criterion_12(corpus: &[CorpusFile]) -> Outcome {
    for f in corpus {
        let doc = parse(&f.text).map_err(|e| format!("{}: {e}", f.name))?;
        let canonical = serialize(&doc);
        let again = parse(&canonical).map_err(|e| format!("{} (canonical): {e}", f.name))?;
        ensure(again == doc, || format!("{}: round trip changed the document", f.name))?;
        ensure(serialize(&again) == canonical, || format!("{}: canonical form not stable", f.name))?;
    }
    let fixtures = [
        ("inconsistent_bracket.lie", ErrorKind::InconsistentBracket, 4, 3),
        ("unresolved_reference.lie", ErrorKind::UnresolvedReference, 3, 29),
        ("bad_scalar.lie", ErrorKind::BadScalar, 3, 36),
    ];
    for (file, kind, line, col) in fixtures {
        let text = std::fs::read_to_string(corpus_dir().join("malformed").join(file)).map_err(|e| e.to_string())?;
        let err = match parse(&text) {
            Ok(_) => return Err(format!("{file} parsed")),
            Err(e) => e,
        };
        ensure(err.kind == kind && err.span.line == line && err.span.col == col, || {
            format!("{file}: got {err}, expected {kind:?} at {line}:{col}")
        })?;
    }
    Ok(format!("{} corpus files round-trip; 3 malformed fixtures located", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = load_corpus();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "sphere non-relatedness", criterion_1()),
        (2, "sphere N versus I", criterion_2()),
        (3, "admissibility of the family", criterion_3()),
        (4, "Nijenhuis verdicts", criterion_4(&corpus)),
        (5, "sphere integrability", criterion_5()),
        (6, "Nijenhuis equals Z+ closure", criterion_6(&corpus)),
        (7, "torsion with an argument in k", criterion_7(&corpus)),
        (8, "ad-specialized torsion", criterion_8(&corpus)),
        (9, "split decompositions", criterion_9(&corpus)),
        (10, "numerical torsion", criterion_10(&corpus)),
        (11, "projected bracket", criterion_11()),
        (12, "parser", criterion_12(&corpus)),
    ];
    let mut failed = 0;
    for (i, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {i:>2} ({name}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {i:>2} ({name}): {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
