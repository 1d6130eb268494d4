use sympword::sampling::{random_sp_phi, random_vanishing_polynomial_word, rng_from_seed};
use sympword::symplectic::se_gen;
use sympword::vaserstein::{
    conjugate_word, decompose_relative, decompose_sp_phi, reduce_form, Direction, ReductionCertificate, Side, Stage,
};
use sympword::{Error, FormRegistry, Generator, GeneratorWord, IdealSpec, Matrix, PolynomialWord, RingSpec, SkewForm, UniPoly};

const F5: RingSpec = RingSpec::PolynomialOverPrimeField(5);

#[test]
fn decompose_over_polynomials_n3() {
    let mut rng = rng_from_seed(31);
    let (phi, _, g) = random_sp_phi(F5, 3, 8, &mut rng);
    let w = decompose_sp_phi(&g, &phi, "phi").unwrap();
    assert!(w.gens.iter().all(|x| matches!(x, Generator::VasC { .. } | Generator::VasR { .. })));
    assert_eq!(w.eval(&FormRegistry::with("phi", &phi).unwrap()).unwrap(), g);
}

#[test]
fn decompose_rejects_non_members() {
    let q = RingSpec::Rationals;
    let phi = SkewForm::standard(q, 2);
    let mut m = Matrix::identity(q, 4);
    m[(0, 0)] = q.from_i64(2);
    let err = decompose_sp_phi(&m, &phi, "phi").unwrap_err();
    assert_eq!((err.stage, err.error), (Stage::Input, Error::NotSymplectic));

    let mut bad = SkewForm::standard(q, 2).matrix().clone();
    bad[(0, 1)] = q.from_i64(-1);
    bad[(1, 0)] = q.one();
    let bad = SkewForm::new(bad).unwrap();
    let err = decompose_sp_phi(&Matrix::identity(q, 4), &bad, "phi").unwrap_err();
    assert_eq!(err.stage, Stage::ReduceForm);
}

#[test]
fn certificate_json_round_trip_and_conjugation() {
    let q = RingSpec::Rationals;
    let mut rng = rng_from_seed(32);
    let (phi, _, g) = random_sp_phi(q, 2, 6, &mut rng);
    let cert = reduce_form(&phi).unwrap();
    let back = ReductionCertificate::from_json(&cert.to_json()).unwrap();
    assert!(back.verify().unwrap());

    let w = decompose_sp_phi(&g, &phi, "phi").unwrap();
    let psi_side = conjugate_word(&w, &cert, "phi", Direction::PhiToPsi).unwrap();
    let h = cert.g().unwrap().checked_mul(&g).unwrap().checked_mul(&cert.g_inverse().unwrap()).unwrap();
    assert_eq!(psi_side.eval(&FormRegistry::new()).unwrap(), h);
}

#[test]
fn relative_decomposition_on_both_sides() {
    let mut rng = rng_from_seed(33);
    let (phi, _, _) = random_sp_phi(F5, 2, 6, &mut rng);
    let cert = reduce_form(&phi).unwrap();
    let w = random_vanishing_polynomial_word(F5, 2, 3, &mut rng);
    let a = F5.variable().unwrap();
    let ideal = IdealSpec::new(a.clone());

    let psi = decompose_relative(&w, &a, Side::Psi).unwrap();
    assert!(psi.word_in_ideal(&ideal).unwrap());
    assert!(psi.eval(&FormRegistry::new()).unwrap().is_congruent_identity(&ideal).unwrap());

    let phi_word = decompose_relative(&w, &a, Side::Phi { cert: &cert, id: "phi" }).unwrap();
    assert!(phi_word.word_in_ideal(&ideal).unwrap());
    let value = phi_word.eval(&FormRegistry::with("phi", &phi).unwrap()).unwrap();
    assert!(value.is_congruent_identity(&ideal).unwrap());
    assert!(value.is_symplectic_for(phi.matrix()).unwrap());
}

#[test]
fn relative_decomposition_errors() {
    let z = RingSpec::Integers;
    let one_plus_x = UniPoly::new(z, vec![z.one(), z.one()]).unwrap();
    let w: PolynomialWord = GeneratorWord { ring: z, dim: 4, gens: vec![se_gen(1, 3, one_plus_x)] };
    let err = decompose_relative(&w, &z.from_i64(2), Side::Psi).unwrap_err();
    assert_eq!((err.stage, err.error), (Stage::Relativize, Error::NotIdentityAtZero));

    let x = UniPoly::x(z);
    let w: PolynomialWord = GeneratorWord { ring: z, dim: 4, gens: vec![se_gen(3, 4, x)] };
    let cert = reduce_form(&SkewForm::standard(z, 2)).unwrap();
    let err = decompose_relative(&w, &z.from_i64(2), Side::Phi { cert: &cert, id: "phi" }).unwrap_err();
    assert_eq!((err.stage, err.error), (Stage::RewriteToBorder, Error::TwoNotUnit(z)));
}
