use serde_json::{json, Map, Value};

use sympword::lingroup::UnimodularVector;
use sympword::matrices::is_symplectic;
use sympword::sampling::{
    random_lin_word, random_pfaffian_one_form, random_se_word, random_skew, random_sp_phi, random_unimodular,
    random_vanishing_polynomial_word, rng_from_seed, PRNG,
};
use sympword::symplectic::{factor_sp, relativize_polynomial_word, specialize, substitute_word};
use sympword::vaserstein::{decompose_relative, decompose_sp_phi, reduce_form, PipelineError, Side};
use sympword::{
    Error, FormRegistry, GeneratorWord, IdealSpec, Matrix, PolynomialWord, ReductionCertificate, RingElement, RingSpec,
    SkewForm, UniPoly,
};

use crate::{Command, Failure, Kind, Options, SideArg};

type Outcome = Result<Value, Failure>;

/// Id given to the non-standard form in reports.
const PHI: &str = "phi";

pub fn run(command: Command, opts: &Options) -> Outcome {
    match command {
        Command::Pfaffian => pfaffian(opts),
        Command::IsSymplectic => is_symplectic_cmd(opts),
        Command::ReduceForm => reduce_form_cmd(opts),
        Command::Factor => factor(opts),
        Command::DecomposePhi => decompose_phi(opts),
        Command::EvalWord => eval_word(opts),
        Command::Verify => verify(opts),
        Command::Relativize => relativize(opts),
        Command::Substitute => substitute(opts),
        Command::Random { kind, len } => random(opts, kind, len),
    }
}

fn at(stage: &'static str) -> impl Fn(Error) -> Failure {
    move |e| Failure::from_error(stage, e)
}

fn require(opts: &Options) -> Result<Value, Failure> {
    opts.payload()?.ok_or_else(|| Failure::malformed("this command needs --in"))
}

/// `v[key]` when present, otherwise `v` itself (bare payloads).
fn part<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).unwrap_or(v)
}

fn ring_of(opts: &Options, v: &Value) -> Result<RingSpec, Failure> {
    let declared = v.get("ring").map(RingSpec::from_json).transpose().map_err(at("input"))?;
    match (declared, opts.ring) {
        (Some(a), Some(b)) if a != b => Err(Failure::malformed(format!("payload is over {a}, --ring says {b}"))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Failure::malformed("no ring: give --ring or a \"ring\" field")),
    }
}

/// Ring of a payload that may nest the ring inside one of its parts.
fn ring_in(opts: &Options, v: &Value, parts: &[&str]) -> Result<RingSpec, Failure> {
    if v.get("ring").is_some() || opts.ring.is_some() {
        return ring_of(opts, v);
    }
    parts.iter().filter_map(|k| v.get(*k)).find(|p| p.get("ring").is_some()).map_or_else(
        || Err(Failure::malformed("no ring: give --ring or a \"ring\" field")),
        |p| ring_of(opts, p),
    )
}

fn matrix(ring: RingSpec, v: &Value) -> Result<Matrix, Failure> {
    Matrix::from_json_in(ring, v).map_err(at("input"))
}

fn form(ring: RingSpec, v: &Value) -> Result<SkewForm, Failure> {
    SkewForm::new(matrix(ring, v)?).map_err(at("form"))
}

fn n_of(opts: &Options) -> Result<usize, Failure> {
    match opts.n {
        Some(n) if n >= 1 => Ok(n),
        _ => Err(Failure::malformed("--n must be at least 1")),
    }
}

fn entry(ring: RingSpec, s: &str) -> Result<RingElement, Failure> {
    if let Ok(v) = serde_json::from_str::<Value>(s) {
        if let Ok(x) = RingElement::from_json(ring, &v) {
            return Ok(x);
        }
    }
    RingElement::parse(ring, s).map_err(|e| Failure::malformed(e.to_string()))
}

fn ideal_point(opts: &Options, ring: RingSpec) -> Result<RingElement, Failure> {
    let s = opts.ideal.as_deref().ok_or_else(|| Failure::malformed("this command needs --ideal"))?;
    entry(ring, s)
}

fn forms_of(payload: &Value, word: &Value) -> Result<FormRegistry, Failure> {
    let mut merged = Map::new();
    for src in [payload.get("forms"), word.get("forms")].into_iter().flatten() {
        let obj = src.as_object().ok_or_else(|| Failure::malformed("\"forms\" must be an object"))?;
        merged.extend(obj.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
    FormRegistry::from_json(&Value::Object(merged)).map_err(at("forms"))
}

fn pipeline_failure(e: PipelineError) -> Failure {
    let mut f = Failure::from_error(e.stage.name(), e.error);
    f.partial = e.partial.map(|w| w.to_json());
    f
}

fn pfaffian(opts: &Options) -> Outcome {
    let (ring, m) = match opts.payload()? {
        Some(v) => {
            let ring = ring_in(opts, &v, &["matrix"])?;
            (ring, matrix(ring, part(&v, "matrix"))?)
        }
        None => {
            let ring = opts.ring.ok_or_else(|| Failure::malformed("give --in, or --ring and --n for psi_n"))?;
            (ring, SkewForm::standard(ring, n_of(opts)?).matrix().clone())
        }
    };
    let pf = m.pfaffian().map_err(at("pfaffian"))?;
    let det = m.determinant().map_err(at("pfaffian"))?;
    Ok(json!({
        "command": "pfaffian",
        "ring": ring.to_json(),
        "pfaffian": pf.to_json(),
        "certified": &pf * &pf == det,
    }))
}

fn form_or_standard(ring: RingSpec, v: &Value, size: usize) -> Result<SkewForm, Failure> {
    match v.get("form").or_else(|| v.get("phi")) {
        Some(f) => form(ring, f),
        None if size % 2 == 0 && size > 0 => Ok(SkewForm::standard(ring, size / 2)),
        None => Err(Failure::malformed("odd-sized matrix and no form given")),
    }
}

fn is_symplectic_cmd(opts: &Options) -> Outcome {
    let v = require(opts)?;
    let ring = ring_in(opts, &v, &["matrix"])?;
    let m = matrix(ring, part(&v, "matrix"))?;
    let phi = form_or_standard(ring, &v, m.rows())?;
    let result = is_symplectic(&m, &phi).map_err(at("is_symplectic"))?;
    // Recomputed entrywise as m^t φ m − φ = 0.
    let diff = m
        .transpose()
        .checked_mul(phi.matrix())
        .and_then(|x| x.checked_mul(&m))
        .and_then(|x| x.checked_sub(phi.matrix()))
        .map_err(at("is_symplectic"))?;
    Ok(json!({
        "command": "is-symplectic",
        "ring": ring.to_json(),
        "symplectic": result,
        "certified": diff.is_zero_matrix() == result,
    }))
}

fn reduce_form_cmd(opts: &Options) -> Outcome {
    let v = require(opts)?;
    let ring = ring_in(opts, &v, &["phi"])?;
    let phi = form(ring, part(&v, "phi"))?;
    let cert = reduce_form(&phi).map_err(at("reduce_form"))?;
    let certified = cert.verify().map_err(at("certify"))?;
    Ok(json!({
        "command": "reduce-form",
        "ring": ring.to_json(),
        "certificate": cert.to_json(),
        "pfaffian": phi.pfaffian().to_json(),
        "certified": certified,
    }))
}

fn factor(opts: &Options) -> Outcome {
    let v = require(opts)?;
    let ring = ring_in(opts, &v, &["matrix"])?;
    let s = matrix(ring, part(&v, "matrix"))?;
    let w = factor_sp(&s).map_err(at("factor_sp"))?;
    let certified = w.eval_by_products(&FormRegistry::new()).map_err(at("certify"))? == s;
    Ok(json!({
        "command": "factor",
        "ring": ring.to_json(),
        "word": w.to_json(),
        "length": w.len(),
        "certified": certified,
    }))
}

fn decompose_phi(opts: &Options) -> Outcome {
    let v = require(opts)?;
    let ring = ring_in(opts, &v, &["matrix", "phi"])?;
    let g = matrix(ring, part(&v, "matrix"))?;
    let phi = form_or_standard(ring, &v, g.rows())?;
    let w = decompose_sp_phi(&g, &phi, PHI).map_err(pipeline_failure)?;
    let forms = FormRegistry::with(PHI, &phi).map_err(at("certify"))?;
    let certified = w.eval_by_products(&forms).map_err(at("certify"))? == g;
    Ok(json!({
        "command": "decompose-phi",
        "ring": ring.to_json(),
        "word": w.to_json(),
        "forms": forms.to_json(),
        "length": w.len(),
        "certified": certified,
    }))
}

fn word_payload(opts: &Options, v: &Value) -> Result<(RingSpec, GeneratorWord, FormRegistry), Failure> {
    let wv = part(v, "word");
    let ring = match wv.get("ring") {
        Some(_) => ring_of(opts, wv)?,
        None => ring_of(opts, v)?,
    };
    let w = GeneratorWord::from_json_in(ring, wv).map_err(at("input"))?;
    Ok((ring, w, forms_of(v, wv)?))
}

fn eval_word(opts: &Options) -> Outcome {
    let v = require(opts)?;
    let (ring, w, forms) = word_payload(opts, &v)?;
    let m = w.eval(&forms).map_err(at("eval_word"))?;
    let certified = w.eval_by_products(&forms).map_err(at("certify"))? == m;
    Ok(json!({
        "command": "eval-word",
        "ring": ring.to_json(),
        "matrix": m.to_json(),
        "certified": certified,
    }))
}

fn verify(opts: &Options) -> Outcome {
    let v = require(opts)?;
    if v.get("word").is_none() {
        let cert = ReductionCertificate::from_json(part(&v, "certificate")).map_err(at("input"))?;
        let ok = cert.verify().unwrap_or(false);
        return Ok(json!({"command": "verify", "ring": cert.phi.ring().to_json(), "kind": "certificate", "certified": ok}));
    }
    let (ring, w, forms) = word_payload(opts, &v)?;
    let m = matrix(ring, v.get("matrix").ok_or_else(|| Failure::malformed("verify needs \"matrix\" next to \"word\""))?)?;
    // A word that cannot be evaluated (unknown form, wrong sizes) does not certify anything.
    let ok = w.eval_by_products(&forms).map(|x| x == m).unwrap_or(false);
    Ok(json!({"command": "verify", "ring": ring.to_json(), "kind": "word", "certified": ok}))
}

fn poly_word(opts: &Options, v: &Value) -> Result<(RingSpec, PolynomialWord), Failure> {
    let wv = part(v, "word");
    let ring = match wv.get("ring") {
        Some(_) => ring_of(opts, wv)?,
        None => ring_of(opts, v)?,
    };
    Ok((ring, PolynomialWord::from_json_in(ring, wv).map_err(at("input"))?))
}

fn relativize(opts: &Options) -> Outcome {
    let v = require(opts)?;
    let (ring, w) = poly_word(opts, &v)?;
    let forms = FormRegistry::new();
    if opts.ideal.is_none() {
        let rel = relativize_polynomial_word(&w).map_err(at("relativize"))?;
        let same = rel.eval_by_products(&forms).map_err(at("certify"))?
            == w.eval_by_products(&forms).map_err(at("certify"))?;
        let relative = rel.word_in_ideal(&IdealSpec::new(UniPoly::x(ring))).map_err(at("certify"))?;
        return Ok(json!({
            "command": "relativize",
            "ring": ring.to_json(),
            "word": rel.to_json(),
            "certified": same && relative,
        }));
    }
    let a = ideal_point(opts, ring)?;
    let ideal = IdealSpec::new(a.clone());
    let expected = substitute_word(&w, &a)
        .and_then(|s| s.eval_by_products(&forms))
        .map_err(at("substitute"))?;
    let mut report = json!({"command": "relativize", "ring": ring.to_json(), "ideal": a.to_json()});
    let (out, value, target) = match opts.side {
        SideArg::Psi => {
            let out = decompose_relative(&w, &a, Side::Psi).map_err(pipeline_failure)?;
            let value = out.eval_by_products(&forms).map_err(at("certify"))?;
            (out, value, expected)
        }
        SideArg::Phi => {
            let fv = v.get("phi").ok_or_else(|| Failure::malformed("--side phi needs a \"phi\" form in the payload"))?;
            let phi = form(ring, fv)?;
            let cert = reduce_form(&phi).map_err(at("reduce_form"))?;
            let out = decompose_relative(&w, &a, Side::Phi { cert: &cert, id: PHI }).map_err(pipeline_failure)?;
            let registry = FormRegistry::with(PHI, &phi).map_err(at("certify"))?;
            let value = out.eval_by_products(&registry).map_err(at("certify"))?;
            let target = cert
                .g_inverse()
                .and_then(|gi| gi.checked_mul(&expected)?.checked_mul(&cert.g()?))
                .map_err(at("certify"))?;
            report["forms"] = registry.to_json();
            report["certificate"] = cert.to_json();
            (out, value, target)
        }
    };
    let relative = out.word_in_ideal(&ideal).map_err(at("certify"))?
        && value.is_congruent_identity(&ideal).map_err(at("certify"))?;
    report["word"] = out.to_json();
    report["certified"] = json!(value == target && relative);
    Ok(report)
}

fn substitute(opts: &Options) -> Outcome {
    let v = require(opts)?;
    let (ring, w) = poly_word(opts, &v)?;
    let a = ideal_point(opts, ring)?;
    let s = substitute_word(&w, &a).map_err(at("substitute"))?;
    let forms = FormRegistry::new();
    let lhs = s.eval_by_products(&forms).map_err(at("certify"))?;
    let rhs = w.eval(&forms).and_then(|m| specialize(&m, &a)).map_err(at("certify"))?;
    Ok(json!({
        "command": "substitute",
        "ring": ring.to_json(),
        "at": a.to_json(),
        "word": s.to_json(),
        "certified": lhs == rhs,
    }))
}

fn random(opts: &Options, kind: Kind, len: usize) -> Outcome {
    let ring = opts.ring.ok_or_else(|| Failure::malformed("random needs --ring"))?;
    let n = n_of(opts)?;
    let seed = opts.seed.unwrap_or(0);
    let mut rng = rng_from_seed(seed);
    let forms = FormRegistry::new();
    let mut report = json!({
        "command": "random",
        "prng": PRNG,
        "seed": seed,
        "ring": ring.to_json(),
        "n": n,
        "len": len,
    });
    let certify = |e: Error| Failure::from_error("certify", e);
    let certified = match kind {
        Kind::SeWord | Kind::LinWord => {
            let w = if kind == Kind::SeWord {
                report["kind"] = json!("se-word");
                random_se_word(ring, n, len, &mut rng)
            } else {
                report["kind"] = json!("lin-word");
                random_lin_word(ring, n, len, &mut rng)
            };
            let m = w.eval(&forms).map_err(certify)?;
            report["word"] = w.to_json();
            report["matrix"] = m.to_json();
            w.eval_by_products(&forms).map_err(certify)? == m
        }
        Kind::Form => {
            report["kind"] = json!("form");
            let (phi, eps) = random_pfaffian_one_form(ring, n, len, &mut rng);
            let cert = ReductionCertificate { phi, epsilon_word: eps };
            report["phi"] = cert.phi.matrix().to_json();
            report["epsilon_word"] = cert.epsilon_word.to_json();
            cert.verify().map_err(certify)? && cert.phi.pfaffian().is_one()
        }
        Kind::Unimodular => {
            report["kind"] = json!("unimodular");
            let n = n.max(2);
            let a = random_unimodular(ring, n, len, &mut rng);
            report["vector"] = Value::Array(a.iter().map(RingElement::to_json).collect());
            UnimodularVector::new(a).is_ok()
        }
        Kind::SpPhi => {
            report["kind"] = json!("sp-phi");
            let (phi, eps, g) = random_sp_phi(ring, n, len, &mut rng);
            let cert = ReductionCertificate { phi, epsilon_word: eps };
            report["phi"] = cert.phi.matrix().to_json();
            report["epsilon_word"] = cert.epsilon_word.to_json();
            report["matrix"] = g.to_json();
            cert.verify().map_err(certify)? && is_symplectic(&g, &cert.phi).map_err(certify)?
        }
        Kind::PolyWord => {
            report["kind"] = json!("poly-word");
            let w = random_vanishing_polynomial_word(ring, n, len, &mut rng);
            let at_zero = substitute_word(&w, &ring.zero()).and_then(|s| s.eval(&forms)).map_err(certify)?;
            report["word"] = w.to_json();
            at_zero.is_identity()
        }
        Kind::Skew => {
            report["kind"] = json!("skew");
            let m = random_skew(ring, 2 * n, &mut rng);
            report["matrix"] = m.to_json();
            m.is_skew_symmetric()
        }
    };
    report["certified"] = json!(certified);
    Ok(report)
}
