//! The φ-side: block data of a form, the generators `C_φ(v)` and `R_φ(v)`,
//! reduction of Pfaffian-one forms to ψ_n, transport of words between the
//! two forms, and the end-to-end decompositions.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lingroup::{row_transvection_word, um_to_e1};
use crate::matrices::{is_symplectic, IdealSpec, Matrix, SkewForm};
use crate::rings::{RingElement, RingSpec, Scalar};
use crate::symplectic::{factor_sp, is_border, relativize_polynomial_word, rewrite_word_to_border, substitute_word};
use crate::words::{Generator, GeneratorWord, PolynomialWord};

/// Id under which ψ_n is always available, in every ring and size.
pub const PSI: &str = "psi";

/// Blocks of `φ = [[0, −c^t], [c, ν]]` and `φ⁻¹ = [[0, d^t], [−d, μ]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormData {
    pub phi: SkewForm,
    pub c: Vec<RingElement>,
    pub d: Vec<RingElement>,
    pub nu: Matrix,
    pub mu: Matrix,
    pub phi_inv: Matrix,
}

impl FormData {
    pub fn extract(phi: &SkewForm) -> Result<Self> {
        let m = phi.matrix();
        let size = m.rows();
        let phi_inv = if phi.is_standard() { m.neg() } else { m.inverse_unit_det()? };
        let k = size - 1;
        Ok(FormData {
            phi: phi.clone(),
            c: (1..size).map(|r| m[(r, 0)].clone()).collect(),
            d: (1..size).map(|c| phi_inv[(0, c)].clone()).collect(),
            nu: m.block(1, 1, k, k)?,
            mu: phi_inv.block(1, 1, k, k)?,
            phi_inv,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.phi.ring()
    }

    /// 2n − 1.
    pub fn tail(&self) -> usize {
        self.c.len()
    }

    fn vector<E: Scalar>(&self, v: &[E]) -> Result<Matrix<E>> {
        if v.len() != self.tail() {
            return Err(Error::Dimension(format!("vector of length {} for a form of size {}", v.len(), self.tail() + 1)));
        }
        Matrix::column_vector(self.ring(), v.to_vec())
    }

    fn lift<E: Scalar>(m: &Matrix) -> Matrix<E> {
        m.map(|x| Ok(E::from_base(x.clone()))).expect("infallible")
    }

    fn lift_vec<E: Scalar>(&self, v: &[RingElement]) -> Matrix<E> {
        Self::lift(&Matrix::column_vector(self.ring(), v.to_vec()).expect("sized"))
    }

    /// `α = I + d v^t ν`.
    pub fn alpha_of<E: Scalar>(&self, v: &[E]) -> Result<Matrix<E>> {
        let v = self.vector(v)?;
        let vt_nu = v.transpose().checked_mul(&Self::lift(&self.nu))?;
        Matrix::identity(self.ring(), self.tail()).checked_add(&self.lift_vec::<E>(&self.d).checked_mul(&vt_nu)?)
    }

    /// `β = I + μ v c^t`.
    pub fn beta_of<E: Scalar>(&self, v: &[E]) -> Result<Matrix<E>> {
        let mu_v = Self::lift(&self.mu).checked_mul(&self.vector(v)?)?;
        Matrix::identity(self.ring(), self.tail()).checked_add(&mu_v.checked_mul(&self.lift_vec::<E>(&self.c).transpose())?)
    }

    /// `C_φ(v) = [[1, 0], [v, α]]`.
    pub fn c_of<E: Scalar>(&self, v: &[E]) -> Result<Matrix<E>> {
        let mut m = Matrix::identity(self.ring(), self.tail() + 1);
        m.set_block(1, 0, &self.vector(v)?);
        m.set_block(1, 1, &self.alpha_of(v)?);
        Ok(m)
    }

    /// `R_φ(v) = [[1, v^t], [0, β]]`.
    pub fn r_of<E: Scalar>(&self, v: &[E]) -> Result<Matrix<E>> {
        let mut m = Matrix::identity(self.ring(), self.tail() + 1);
        m.set_block(0, 1, &self.vector(v)?.transpose());
        m.set_block(1, 1, &self.beta_of(v)?);
        Ok(m)
    }
}

/// Forms that `C`/`R` generators may refer to by id. [`PSI`] is built in.
#[derive(Clone, Debug, Default)]
pub struct FormRegistry {
    forms: BTreeMap<String, FormData>,
}

impl FormRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(id: &str, phi: &SkewForm) -> Result<Self> {
        let mut r = Self::new();
        r.insert(id, phi)?;
        Ok(r)
    }

    pub fn insert(&mut self, id: &str, phi: &SkewForm) -> Result<()> {
        if id == PSI {
            return Err(Error::FormMismatch(format!("\"{PSI}\" is reserved for the standard form")));
        }
        self.forms.insert(id.to_string(), FormData::extract(phi)?);
        Ok(())
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.forms.keys().map(String::as_str)
    }

    /// Block data of the form `id`, checked against the ring and size of the word using it.
    pub fn get(&self, id: &str, ring: RingSpec, dim: usize) -> Result<Cow<'_, FormData>> {
        if id == PSI {
            if dim % 2 == 1 || dim == 0 {
                return Err(Error::OddSize(dim));
            }
            return Ok(Cow::Owned(FormData::extract(&SkewForm::standard(ring, dim / 2))?));
        }
        let fd = self.forms.get(id).ok_or_else(|| Error::UnknownForm(id.to_string()))?;
        if fd.ring() != ring || fd.tail() + 1 != dim {
            return Err(Error::FormMismatch(format!(
                "form {id} is {}x{} over {}, used in dimension {dim} over {ring}",
                fd.tail() + 1,
                fd.tail() + 1,
                fd.ring()
            )));
        }
        Ok(Cow::Borrowed(fd))
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.forms.iter().map(|(k, fd)| (k.clone(), fd.phi.matrix().to_json())).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("forms must be an object".into()))?;
        let mut r = Self::new();
        for (id, m) in obj {
            r.insert(id, &SkewForm::new(Matrix::from_json(m)?)?)?;
        }
        Ok(r)
    }
}

/// `(1⊥ε)^t ψ_n (1⊥ε) = φ` with `ε` given as an `E_{2n−1}` word.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionCertificate {
    pub phi: SkewForm,
    pub epsilon_word: GeneratorWord,
}

impl ReductionCertificate {
    pub fn epsilon(&self) -> Result<Matrix> {
        self.epsilon_word.eval(&FormRegistry::new())
    }

    pub fn epsilon_inverse(&self) -> Result<Matrix> {
        self.epsilon_word.invert().eval(&FormRegistry::new())
    }

    /// `1⊥ε`.
    pub fn g(&self) -> Result<Matrix> {
        Matrix::identity(self.phi.ring(), 1).block_perp(&self.epsilon()?)
    }

    pub fn g_inverse(&self) -> Result<Matrix> {
        Matrix::identity(self.phi.ring(), 1).block_perp(&self.epsilon_inverse()?)
    }

    /// Recomputes `(1⊥ε)^t ψ_n (1⊥ε)` and compares with φ.
    pub fn verify(&self) -> Result<bool> {
        let n = self.phi.half_size();
        if self.epsilon_word.dim + 1 != 2 * n || self.epsilon_word.ring != self.phi.ring() {
            return Ok(false);
        }
        if self.epsilon_word.gens.iter().any(|g| !matches!(g, Generator::LinE { .. })) {
            return Ok(false);
        }
        let g = self.g()?;
        let psi = SkewForm::standard(self.phi.ring(), n);
        Ok(g.transpose().checked_mul(psi.matrix())?.checked_mul(&g)? == *self.phi.matrix())
    }

    pub fn to_json(&self) -> Value {
        json!({"phi": self.phi.matrix().to_json(), "epsilon_word": self.epsilon_word.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let phi = SkewForm::new(Matrix::from_json(v.get("phi").ok_or_else(|| Error::Parse("missing phi".into()))?)?)?;
        let w = v.get("epsilon_word").ok_or_else(|| Error::Parse("missing epsilon_word".into()))?;
        Ok(ReductionCertificate { epsilon_word: GeneratorWord::from_json_in(phi.ring(), w)?, phi })
    }
}

/// Finds an elementary `ε` with `(1⊥ε)^t ψ_n (1⊥ε) = φ`; needs Pf(φ) = 1.
///
/// Builds `τ = ε⁻¹` with `(1⊥τ)^t φ (1⊥τ) = ψ_n` one hyperbolic pair at a
/// time: `um_to_e1` brings the first row to `e_2^t`, a single transvection
/// decouples the pair from the rest, and the remaining block is reduced
/// recursively.
pub fn reduce_form(phi: &SkewForm) -> Result<ReductionCertificate> {
    let pf = phi.pfaffian();
    if !pf.is_one() {
        return Err(Error::PfaffianNotOne(pf.to_string()));
    }
    let tau = reduce_tau(phi.matrix())?;
    let cert = ReductionCertificate { phi: phi.clone(), epsilon_word: tau.invert() };
    if !cert.verify()? {
        return Err(Error::Certification("reduction certificate does not reproduce the form".into()));
    }
    Ok(cert)
}

fn reduce_tau(phi: &Matrix) -> Result<GeneratorWord> {
    let ring = phi.ring();
    let size = phi.rows();
    if size == 2 {
        if !phi[(0, 1)].is_one() {
            return Err(Error::PfaffianNotOne(phi[(0, 1)].to_string()));
        }
        return Ok(GeneratorWord::empty(ring, 1));
    }
    let k = size - 1;
    let forms = FormRegistry::new();
    let one = Matrix::identity(ring, 1);

    // First row (0, −c^t) becomes (0, e_1^t).
    let row: Vec<RingElement> = (1..size).map(|c| phi[(0, c)].clone()).collect();
    let beta = um_to_e1(&row)?;
    let t1 = one.block_perp(&beta.eval(&forms)?)?;
    let phi1 = t1.transpose().checked_mul(phi)?.checked_mul(&t1)?;

    // phi1 = [[0, 1, 0], [−1, 0, w^t], [0, −w, φ*]]; shift e_2 by x = (φ*)⁻¹ w.
    let star = phi1.block(2, 2, size - 2, size - 2)?;
    let w = phi1.block(2, 1, size - 2, 1)?.neg();
    let x = star.inverse_unit_det()?.checked_mul(&w)?;
    let mut t = vec![ring.zero()];
    t.extend(x.column(0));
    let tau2 = row_transvection_word(1, &t, k)?.transpose_linear()?;
    let t2 = one.block_perp(&tau2.eval(&forms)?)?;
    let phi2 = t2.transpose().checked_mul(&phi1)?.checked_mul(&t2)?;
    let psi1 = SkewForm::standard(ring, 1);
    if phi2.block(0, 0, 2, 2)? != *psi1.matrix() || !phi2.block(0, 2, 2, size - 2)?.is_zero_matrix() {
        return Err(Error::Certification("pair was not split off".into()));
    }

    let rest = reduce_tau(&phi2.block(2, 2, size - 2, size - 2)?)?;
    let mut tau = beta;
    tau.gens.extend(tau2.gens);
    tau.gens.extend(rest.shifted(2, k)?.gens);
    Ok(tau.simplify())
}

/// Which way [`conjugate_word`] transports generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `X ↦ (1⊥ε)⁻¹ X (1⊥ε)`.
    PsiToPhi,
    /// `X ↦ (1⊥ε) X (1⊥ε)⁻¹`.
    PhiToPsi,
}

/// Rewrites `C`/`R` generators between ψ_n and φ (registered as `phi_id`):
/// `(1⊥ε)⁻¹ C_ψ(w) (1⊥ε) = C_φ(ε⁻¹ w)` and `(1⊥ε)⁻¹ R_ψ(w) (1⊥ε) = R_φ(ε^t w)`.
pub fn conjugate_word(
    w: &GeneratorWord,
    cert: &ReductionCertificate,
    phi_id: &str,
    direction: Direction,
) -> Result<GeneratorWord> {
    let eps = cert.epsilon()?;
    let eps_inv = cert.epsilon_inverse()?;
    let t = Transport {
        phi_id,
        direction,
        for_c: match direction {
            Direction::PsiToPhi => eps_inv.clone(),
            Direction::PhiToPsi => eps.clone(),
        },
        for_r: match direction {
            Direction::PsiToPhi => eps.transpose(),
            Direction::PhiToPsi => eps_inv.transpose(),
        },
    };
    if w.ring != cert.phi.ring() || w.dim != cert.phi.matrix().rows() {
        return Err(Error::FormMismatch("word and certificate have different shapes".into()));
    }
    t.word(w)
}

struct Transport<'a> {
    phi_id: &'a str,
    direction: Direction,
    for_c: Matrix,
    for_r: Matrix,
}

impl Transport<'_> {
    fn word(&self, w: &GeneratorWord) -> Result<GeneratorWord> {
        let gens = w.gens.iter().map(|g| self.gen(g)).collect::<Result<_>>()?;
        Ok(GeneratorWord { ring: w.ring, dim: w.dim, gens })
    }

    fn source(&self) -> &str {
        match self.direction {
            Direction::PsiToPhi => PSI,
            Direction::PhiToPsi => self.phi_id,
        }
    }

    fn target(&self) -> String {
        match self.direction {
            Direction::PsiToPhi => self.phi_id.to_string(),
            Direction::PhiToPsi => PSI.to_string(),
        }
    }

    fn apply(m: &Matrix, v: &[RingElement]) -> Result<Vec<RingElement>> {
        Ok(m.checked_mul(&Matrix::column_vector(m.ring(), v.to_vec())?)?.column(0))
    }

    fn gen(&self, g: &Generator) -> Result<Generator> {
        let check = |form: &str| {
            if form == self.source() {
                Ok(())
            } else {
                Err(Error::FormMismatch(format!("generator for form {form}, expected {}", self.source())))
            }
        };
        Ok(match g {
            Generator::VasC { form, v } => {
                check(form)?;
                Generator::VasC { form: self.target(), v: Self::apply(&self.for_c, v)? }
            }
            Generator::VasR { form, v } => {
                check(form)?;
                Generator::VasR { form: self.target(), v: Self::apply(&self.for_r, v)? }
            }
            Generator::Conj { outer, inner } => Generator::conj(self.word(outer)?, self.gen(inner)?),
            _ => return Err(Error::Unsupported("only C/R generators can be transported between forms".into())),
        })
    }
}

/// Replaces border generators by Vaserstein generators for ψ_n:
/// `se_{k1}(a) = C_ψ(a e_{k−1})` and `se_{1k}(a) = R_ψ(a e_{k−1})`.
pub fn border_to_vaserstein(w: &GeneratorWord) -> Result<GeneratorWord> {
    let basis = |k: usize, a: &RingElement| {
        let mut v = vec![w.ring.zero(); w.dim - 1];
        v[k - 2] = a.clone();
        v
    };
    let map = |g: &Generator| -> Result<Generator> {
        match g {
            Generator::SymSE { i: 1, j, a } => Ok(Generator::VasR { form: PSI.into(), v: basis(*j, a) }),
            Generator::SymSE { i, j: 1, a } => Ok(Generator::VasC { form: PSI.into(), v: basis(*i, a) }),
            _ => Err(Error::Unsupported(format!("not a border generator: {g:?}"))),
        }
    };
    let gens = w
        .gens
        .iter()
        .map(|g| match g {
            Generator::Conj { outer, inner } => Ok(Generator::conj(border_to_vaserstein(outer)?, map(inner)?)),
            g => map(g),
        })
        .collect::<Result<_>>()?;
    Ok(GeneratorWord { ring: w.ring, dim: w.dim, gens })
}

/// Pipeline stages of [`decompose_sp_phi`] and [`decompose_relative`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Input,
    ReduceForm,
    ConjugateToPsi,
    FactorSp,
    Relativize,
    Substitute,
    RewriteToBorder,
    MapToVaserstein,
    ConjugateToPhi,
    Certify,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Input => "input",
            Stage::ReduceForm => "reduce_form",
            Stage::ConjugateToPsi => "conjugate_to_psi",
            Stage::FactorSp => "factor_sp",
            Stage::Relativize => "relativize",
            Stage::Substitute => "substitute",
            Stage::RewriteToBorder => "rewrite_to_border",
            Stage::MapToVaserstein => "map_to_vaserstein",
            Stage::ConjugateToPhi => "conjugate_to_phi",
            Stage::Certify => "certify",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A pipeline failure, with the last complete intermediate word when there is one.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("stage {stage}: {error}")]
pub struct PipelineError {
    pub stage: Stage,
    pub error: Error,
    pub partial: Option<GeneratorWord>,
}

trait AtStage<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, PipelineError>;
}

impl<T> AtStage<T> for Result<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, PipelineError> {
        self.map_err(|error| PipelineError { stage, error, partial: None })
    }
}

fn fail<T>(stage: Stage, error: Error) -> std::result::Result<T, PipelineError> {
    Err(PipelineError { stage, error, partial: None })
}

/// A certified word in `C_φ`/`R_φ` generators (form id `phi_id`) evaluating to `g`.
///
/// Stages: reduce φ to ψ_n, conjugate `g` into `Sp_{2n}(R)`, factor into
/// `se` generators, rewrite on the border (needs 2 invertible), read the
/// border generators as `C_ψ`/`R_ψ`, and transport back to φ. Over a ring
/// where 2 is not a unit the error carries the ψ-side `se` factorization.
pub fn decompose_sp_phi(
    g: &Matrix,
    phi: &SkewForm,
    phi_id: &str,
) -> std::result::Result<GeneratorWord, PipelineError> {
    let ring = phi.ring();
    if g.ring() != ring {
        return fail(Stage::Input, Error::RingMismatch(ring, g.ring()));
    }
    if g.rows() != phi.matrix().rows() || !g.is_square() {
        return fail(Stage::Input, Error::Dimension("matrix and form sizes differ".into()));
    }
    if !is_symplectic(g, phi).at(Stage::Input)? {
        return fail(Stage::Input, Error::NotSymplectic);
    }
    let cert = reduce_form(phi).at(Stage::ReduceForm)?;
    let h = cert.g().and_then(|t| t.checked_mul(g)?.checked_mul(&cert.g_inverse()?)).at(Stage::ConjugateToPsi)?;
    let factored = factor_sp(&h).at(Stage::FactorSp)?;
    if !ring.two_is_unit() {
        return Err(PipelineError { stage: Stage::RewriteToBorder, error: Error::TwoNotUnit(ring), partial: Some(factored) });
    }
    let border = rewrite_word_to_border(&factored).at(Stage::RewriteToBorder)?;
    let psi_word = border_to_vaserstein(&border).at(Stage::MapToVaserstein)?;
    let out = conjugate_word(&psi_word, &cert, phi_id, Direction::PsiToPhi).at(Stage::ConjugateToPhi)?;
    let forms = FormRegistry::with(phi_id, phi).at(Stage::Certify)?;
    if out.eval(&forms).at(Stage::Certify)? != *g {
        return fail(Stage::Certify, Error::Certification("decomposition does not re-evaluate to the input".into()));
    }
    Ok(out)
}

/// Target side of [`decompose_relative`].
#[derive(Clone, Copy, Debug)]
pub enum Side<'a> {
    /// Conjugated `se`/`E` generators for ψ_n.
    Psi,
    /// Conjugated `C_φ`/`R_φ` generators for the certified form, registered as `id`.
    Phi { cert: &'a ReductionCertificate, id: &'a str },
}

/// Turns a polynomial certificate (a word over R[X] that is `I` at `X = 0`)
/// into a relative word over R for the ideal `(a)`.
///
/// On the ψ side the result evaluates to the certificate at `X = a`; on the
/// φ side to its conjugate `(1⊥ε)⁻¹ · w(a) · (1⊥ε)`.
pub fn decompose_relative(
    cert_word: &PolynomialWord,
    a: &RingElement,
    side: Side<'_>,
) -> std::result::Result<GeneratorWord, PipelineError> {
    if a.ring() != cert_word.ring {
        return fail(Stage::Input, Error::RingMismatch(cert_word.ring, a.ring()));
    }
    let rel = relativize_polynomial_word(cert_word).at(Stage::Relativize)?;
    let specialized = substitute_word(&rel, a).at(Stage::Substitute)?;
    let expected = substitute_word(cert_word, a).and_then(|w| w.eval(&FormRegistry::new())).at(Stage::Substitute)?;
    let ideal = IdealSpec::new(a.clone());
    let (out, forms, target) = match side {
        Side::Psi => (specialized, FormRegistry::new(), expected),
        Side::Phi { cert, id } => {
            let border = rewrite_word_to_border(&specialized).map_err(|error| PipelineError {
                stage: Stage::RewriteToBorder,
                error,
                partial: Some(specialized.clone()),
            })?;
            debug_assert!(border.gens.iter().all(|g| match g {
                Generator::Conj { inner, .. } => is_border(inner),
                g => is_border(g),
            }));
            let psi_word = border_to_vaserstein(&border).at(Stage::MapToVaserstein)?;
            let out = conjugate_word(&psi_word, cert, id, Direction::PsiToPhi).at(Stage::ConjugateToPhi)?;
            let target = cert
                .g_inverse()
                .and_then(|gi| gi.checked_mul(&expected)?.checked_mul(&cert.g()?))
                .at(Stage::ConjugateToPhi)?;
            (out, FormRegistry::with(id, &cert.phi).at(Stage::Certify)?, target)
        }
    };
    let value = out.eval(&forms).at(Stage::Certify)?;
    if value != target {
        return fail(Stage::Certify, Error::Certification("relative word changed the evaluation".into()));
    }
    if !out.word_in_ideal(&ideal).at(Stage::Certify)? || !value.is_congruent_identity(&ideal).at(Stage::Certify)? {
        return fail(Stage::Certify, Error::Certification("result is not relative to the ideal".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::UniPoly;
    use crate::sampling::{random_element, random_pfaffian_one_form, random_se_word, rng_from_seed};
    use crate::symplectic::se_gen;

    const Q: RingSpec = RingSpec::Rationals;
    const F5: RingSpec = RingSpec::PolynomialOverPrimeField(5);

    fn e1(ring: RingSpec, k: usize) -> Vec<RingElement> {
        let mut v = vec![ring.zero(); k];
        v[0] = ring.one();
        v
    }

    #[test]
    fn standard_form_blocks() {
        for n in 1..=3 {
            let fd = FormData::extract(&SkewForm::standard(Q, n)).unwrap();
            let minus_e1: Vec<_> = e1(Q, 2 * n - 1).iter().map(|x| -x).collect();
            assert_eq!(fd.c, minus_e1);
            assert_eq!(fd.d, minus_e1);
            assert_eq!(fd.mu, fd.nu.neg());
            assert_eq!(fd.nu, SkewForm::standard(Q, n).matrix().block(1, 1, 2 * n - 1, 2 * n - 1).unwrap());
        }
        let fd = FormData::extract(&SkewForm::standard(Q, 1)).unwrap();
        assert_eq!(fd.nu, Matrix::zeros(Q, 1, 1));
    }

    #[test]
    fn singular_form_rejected() {
        let z = RingSpec::Integers;
        let m = Matrix::from_rows(z, vec![vec![z.zero(), z.from_i64(2)], vec![z.from_i64(-2), z.zero()]]).unwrap();
        assert!(FormData::extract(&SkewForm::new(m).unwrap()).is_err());
    }

    #[test]
    fn zero_vector_gives_identity() {
        let fd = FormData::extract(&SkewForm::standard(Q, 2)).unwrap();
        let v = vec![Q.zero(); 3];
        assert!(fd.alpha_of(&v).unwrap().is_identity());
        assert!(fd.beta_of(&v).unwrap().is_identity());
        assert!(fd.c_of(&v).unwrap().is_identity());
        assert!(fd.r_of(&v).unwrap().is_identity());
        assert!(fd.c_of(&[Q.one()]).is_err());
    }

    #[test]
    fn single_coordinate_generators_are_border_generators() {
        let forms = FormRegistry::new();
        let mut rng = rng_from_seed(1);
        for n in 2..=3 {
            let fd = FormData::extract(&SkewForm::standard(Q, n)).unwrap();
            for k in 2..=2 * n {
                let a = random_element(Q, &mut rng);
                let mut v = vec![Q.zero(); 2 * n - 1];
                v[k - 2] = a.clone();
                let word = |g| GeneratorWord { ring: Q, dim: 2 * n, gens: vec![g] };
                assert_eq!(fd.c_of(&v).unwrap(), word(se_gen(k, 1, a.clone())).eval(&forms).unwrap());
                assert_eq!(fd.r_of(&v).unwrap(), word(se_gen(1, k, a.clone())).eval(&forms).unwrap());
            }
        }
    }

    #[test]
    fn generators_preserve_their_form() {
        let mut rng = rng_from_seed(4);
        for ring in [Q, F5] {
            let (phi, _) = random_pfaffian_one_form(ring, 2, 10, &mut rng);
            let fd = FormData::extract(&phi).unwrap();
            let v: Vec<_> = (0..3).map(|_| random_element(ring, &mut rng)).collect();
            assert!(is_symplectic(&fd.c_of(&v).unwrap(), &phi).unwrap());
            assert!(is_symplectic(&fd.r_of(&v).unwrap(), &phi).unwrap());
            assert!(fd.alpha_of(&v).unwrap().determinant().unwrap().is_one());
            assert!(fd.beta_of(&v).unwrap().determinant().unwrap().is_one());
            // C(v)⁻¹ = C(−v)
            let neg: Vec<_> = v.iter().map(|x| -x).collect();
            assert!(fd.c_of(&v).unwrap().checked_mul(&fd.c_of(&neg).unwrap()).unwrap().is_identity());
            assert!(fd.r_of(&v).unwrap().checked_mul(&fd.r_of(&neg).unwrap()).unwrap().is_identity());
        }
    }

    #[test]
    fn registry_lookups() {
        let mut r = FormRegistry::new();
        assert!(r.insert(PSI, &SkewForm::standard(Q, 2)).is_err());
        r.insert("phi0", &SkewForm::standard(Q, 2)).unwrap();
        assert!(r.get("phi0", Q, 4).is_ok());
        assert!(matches!(r.get("phi0", Q, 6), Err(Error::FormMismatch(_))));
        assert!(matches!(r.get("nope", Q, 4), Err(Error::UnknownForm(_))));
        assert!(r.get(PSI, F5, 6).is_ok());
        let back = FormRegistry::from_json(&r.to_json()).unwrap();
        assert_eq!(back.ids().collect::<Vec<_>>(), vec!["phi0"]);
    }

    #[test]
    fn reduce_standard_form() {
        for n in 1..=3 {
            let cert = reduce_form(&SkewForm::standard(Q, n)).unwrap();
            assert!(cert.epsilon_word.is_empty());
            assert!(cert.verify().unwrap());
        }
    }

    #[test]
    fn reduce_random_forms() {
        let mut rng = rng_from_seed(8);
        for ring in [RingSpec::Integers, Q, F5] {
            for n in 2..=3 {
                let (phi, _) = random_pfaffian_one_form(ring, n, 15, &mut rng);
                let cert = reduce_form(&phi).unwrap();
                assert!(cert.verify().unwrap());
                let back = ReductionCertificate::from_json(&cert.to_json()).unwrap();
                assert_eq!(back, cert);
            }
        }
    }

    #[test]
    fn pfaffian_minus_one_rejected() {
        let mut m = SkewForm::standard(Q, 2).matrix().clone();
        m[(0, 1)] = -Q.one();
        m[(1, 0)] = Q.one();
        assert!(matches!(reduce_form(&SkewForm::new(m).unwrap()), Err(Error::PfaffianNotOne(_))));
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut rng = rng_from_seed(9);
        let (phi, _) = random_pfaffian_one_form(Q, 2, 10, &mut rng);
        let mut cert = reduce_form(&phi).unwrap();
        cert.epsilon_word.push(Generator::LinE { i: 1, j: 2, a: Q.one() });
        assert!(!cert.verify().unwrap());
    }

    #[test]
    fn transport_identities() {
        let mut rng = rng_from_seed(10);
        let (phi, _) = random_pfaffian_one_form(Q, 2, 10, &mut rng);
        let cert = reduce_form(&phi).unwrap();
        let psi = FormData::extract(&SkewForm::standard(Q, 2)).unwrap();
        let fd = FormData::extract(&phi).unwrap();
        let eps = cert.epsilon().unwrap();
        let eps_inv = cert.epsilon_inverse().unwrap();
        let col = |v: &[RingElement]| Matrix::column_vector(Q, v.to_vec()).unwrap();
        assert_eq!(col(&fd.c), eps.transpose().checked_mul(&col(&psi.c)).unwrap());
        assert_eq!(col(&fd.d), eps_inv.checked_mul(&col(&psi.d)).unwrap());
        assert_eq!(fd.nu, eps.transpose().checked_mul(&psi.nu).unwrap().checked_mul(&eps).unwrap());
        assert_eq!(fd.mu, eps_inv.checked_mul(&psi.mu).unwrap().checked_mul(&eps_inv.transpose()).unwrap());
    }

    #[test]
    fn conjugation_of_single_generators() {
        let mut rng = rng_from_seed(12);
        let (phi, _) = random_pfaffian_one_form(Q, 2, 10, &mut rng);
        let cert = reduce_form(&phi).unwrap();
        let forms = FormRegistry::with("phi", &phi).unwrap();
        let v: Vec<_> = (0..3).map(|_| random_element(Q, &mut rng)).collect();
        for g in [Generator::VasC { form: PSI.into(), v: v.clone() }, Generator::VasR { form: PSI.into(), v }] {
            let w = GeneratorWord { ring: Q, dim: 4, gens: vec![g] };
            let out = conjugate_word(&w, &cert, "phi", Direction::PsiToPhi).unwrap();
            let expected =
                cert.g_inverse().unwrap().checked_mul(&w.eval(&forms).unwrap()).unwrap().checked_mul(&cert.g().unwrap()).unwrap();
            assert_eq!(out.eval(&forms).unwrap(), expected);
            let back = conjugate_word(&out, &cert, "phi", Direction::PhiToPsi).unwrap();
            assert_eq!(back, w);
        }
        let trivial = reduce_form(&SkewForm::standard(Q, 2)).unwrap();
        let w = GeneratorWord { ring: Q, dim: 4, gens: vec![Generator::VasC { form: PSI.into(), v: e1(Q, 3) }] };
        let out = conjugate_word(&w, &trivial, "psi2", Direction::PsiToPhi).unwrap();
        assert_eq!(out.gens, vec![Generator::VasC { form: "psi2".into(), v: e1(Q, 3) }]);
    }

    #[test]
    fn decompose_identity_and_products() {
        let phi = SkewForm::standard(Q, 2);
        assert!(decompose_sp_phi(&Matrix::identity(Q, 4), &phi, "phi").unwrap().is_empty());

        let mut rng = rng_from_seed(13);
        let (phi, _) = random_pfaffian_one_form(Q, 2, 8, &mut rng);
        let fd = FormData::extract(&phi).unwrap();
        let v: Vec<_> = (0..3).map(|_| random_element(Q, &mut rng)).collect();
        let u: Vec<_> = (0..3).map(|_| random_element(Q, &mut rng)).collect();
        let g = fd.c_of(&v).unwrap().checked_mul(&fd.r_of(&u).unwrap()).unwrap();
        let w = decompose_sp_phi(&g, &phi, "phi").unwrap();
        assert!(w.gens.iter().all(|g| matches!(g, Generator::VasC { form, .. } | Generator::VasR { form, .. } if form == "phi")));
        assert_eq!(w.eval(&FormRegistry::with("phi", &phi).unwrap()).unwrap(), g);
    }

    #[test]
    fn decompose_over_integers_stops_at_border_stage() {
        let z = RingSpec::Integers;
        let mut rng = rng_from_seed(14);
        let (phi, _) = random_pfaffian_one_form(z, 2, 8, &mut rng);
        let cert = reduce_form(&phi).unwrap();
        let s = random_se_word(z, 2, 10, &mut rng).eval(&FormRegistry::new()).unwrap();
        let g = cert.g_inverse().unwrap().checked_mul(&s).unwrap().checked_mul(&cert.g().unwrap()).unwrap();
        let err = decompose_sp_phi(&g, &phi, "phi").unwrap_err();
        assert_eq!(err.stage, Stage::RewriteToBorder);
        assert_eq!(err.error, Error::TwoNotUnit(z));
        assert_eq!(err.partial.unwrap().eval(&FormRegistry::new()).unwrap(), s);
    }

    #[test]
    fn relative_examples() {
        let z = RingSpec::Integers;
        let w: PolynomialWord = GeneratorWord { ring: z, dim: 4, gens: vec![se_gen(2, 1, UniPoly::x(z))] };
        let out = decompose_relative(&w, &z.from_i64(3), Side::Psi).unwrap();
        assert_eq!(out.gens, vec![Generator::conj(GeneratorWord::empty(z, 4), se_gen(2, 1, z.from_i64(3)))]);
        let out = decompose_relative(&w, &z.zero(), Side::Psi).unwrap();
        assert!(out.eval(&FormRegistry::new()).unwrap().is_identity());
    }

    #[test]
    fn relative_phi_side() {
        let mut rng = rng_from_seed(15);
        let (phi, _) = random_pfaffian_one_form(Q, 2, 8, &mut rng);
        let cert = reduce_form(&phi).unwrap();
        let p = |c: &[i64]| UniPoly::new(Q, c.iter().map(|&x| Q.from_i64(x)).collect()).unwrap();
        let w: PolynomialWord = GeneratorWord {
            ring: Q,
            dim: 4,
            gens: vec![se_gen(3, 4, p(&[1, 2])), se_gen(2, 3, p(&[0, 0, 1])), se_gen(3, 4, p(&[-1]))],
        };
        let a = Q.rational(3, 2).unwrap();
        let out = decompose_relative(&w, &a, Side::Phi { cert: &cert, id: "phi" }).unwrap();
        assert!(out.word_in_ideal(&IdealSpec::new(a)).unwrap());
    }
}
