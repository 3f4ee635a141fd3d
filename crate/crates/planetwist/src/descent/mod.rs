//! Galois cocycles valued in projective matrices, their validation,
//! Hilbert-90 trivialization by Speiser averaging, and descent of plane
//! models to subtowers.

mod certificate;
mod obstruction;

pub use certificate::{
    build_certificate, Certificate, CertificateConfig, CheckRecord, CheckStatus, Conclusion,
    ConclusionBasis,
};
pub use obstruction::{
    conic_solvability, conic_witness_search, level_two_check, norm_obstruction,
    quaternion_embedding_check, ConicStatus, LevelTwoOutcome, NormConclusion,
    NormObstructionReport, QuaternionOutcome,
};

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::ternary::{Matrix3, TernaryForm};
use crate::tower::{TowerAutomorphism, TowerElement, TowerSpec};

/// A finite abelian Galois group presented by commuting cyclic factors.
/// Elements are exponent tuples against the factor generators.
#[derive(Clone)]
pub struct GaloisGroupPresentation {
    spec: Arc<TowerSpec>,
    factors: Vec<(TowerAutomorphism, u64)>,
}

impl GaloisGroupPresentation {
    /// Verifies each generator has the stated order and that the factors
    /// commute pairwise (checked on the tower generators).
    pub fn new(spec: &Arc<TowerSpec>, factors: Vec<(TowerAutomorphism, u64)>) -> Result<Self> {
        for (gen, order) in &factors {
            if *order < 1 {
                return Err(Error::InvalidParams("factor order must be >= 1".into()));
            }
            if !gen.pow(*order).is_identity() {
                return Err(Error::InvalidParams(
                    "generator does not have the stated order".into(),
                ));
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let ab = factors[i].0.compose(&factors[j].0);
                let ba = factors[j].0.compose(&factors[i].0);
                if ab != ba {
                    return Err(Error::InvalidParams(format!(
                        "factors {i} and {j} do not commute"
                    )));
                }
            }
        }
        Ok(GaloisGroupPresentation { spec: Arc::clone(spec), factors })
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub fn factors(&self) -> &[(TowerAutomorphism, u64)] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|(_, o)| o).product()
    }

    /// All exponent tuples in mixed-radix order (last factor fastest).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for (_, order) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * *order as usize);
            for prefix in &out {
                for e in 0..*order {
                    let mut t = prefix.clone();
                    t.push(e);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }

    pub fn compose_exponents(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|((_, order), (x, y))| (x + y) % order)
            .collect()
    }

    pub fn automorphism(&self, exps: &[u64]) -> TowerAutomorphism {
        let mut acc = TowerAutomorphism::identity(&self.spec);
        for ((gen, _), &e) in self.factors.iter().zip(exps) {
            for _ in 0..e {
                acc = gen.compose(&acc);
            }
        }
        acc
    }
}

/// A map from the group to projective matrices, stored as concrete lifts;
/// all cocycle arithmetic is projective (the values live in PGL3, and a
/// scalar-free lift need not exist: the standard example has A^3 = pI).
#[derive(Clone)]
pub struct Cocycle {
    group: GaloisGroupPresentation,
    /// Values indexed parallel to `group.elements()`.
    values: Vec<Matrix3>,
}

impl Cocycle {
    pub fn new(group: GaloisGroupPresentation, values: Vec<Matrix3>) -> Result<Self> {
        if values.len() != group.elements().len() {
            return Err(Error::InvalidCocycle(
                "one value per group element is required".into(),
            ));
        }
        Ok(Cocycle { group, values })
    }

    /// Builds a cocycle from values on exponent tuples via a closure.
    pub fn from_fn(
        group: GaloisGroupPresentation,
        f: impl Fn(&[u64]) -> Result<Matrix3>,
    ) -> Result<Self> {
        let values = group
            .elements()
            .iter()
            .map(|e| f(e))
            .collect::<Result<Vec<_>>>()?;
        Cocycle::new(group, values)
    }

    pub fn group(&self) -> &GaloisGroupPresentation {
        &self.group
    }

    pub fn value(&self, exps: &[u64]) -> &Matrix3 {
        let elements = self.group.elements();
        let idx = elements
            .iter()
            .position(|e| e == exps)
            .expect("exponent tuple within the group");
        &self.values[idx]
    }

    pub fn values(&self) -> &[Matrix3] {
        &self.values
    }
}

/// Result of validating the cocycle condition on all |G|^2 pairs.
#[derive(Clone, Debug)]
pub enum CocycleValidation {
    Valid { pairs_checked: usize },
    Invalid { pair: (Vec<u64>, Vec<u64>) },
}

impl CocycleValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, CocycleValidation::Valid { .. })
    }
}

/// Checks `a_id ~ I` and `a_{gh} ~ a_g . g(a_h)` projectively for every
/// pair, and optionally that every value lies (projectively) in a supplied
/// automorphism group. Pairs are checked in parallel; on failure the
/// first offending pair in deterministic order is reported.
pub fn validate_cocycle(
    cocycle: &Cocycle,
    automorphism_group: Option<&crate::hessian::ProjectiveMatrixGroup>,
) -> Result<CocycleValidation> {
    let group = cocycle.group();
    let elements = group.elements();
    let identity = Matrix3::identity(group.spec());
    let id_exps = vec![0u64; group.factors().len()];
    if !cocycle.value(&id_exps).projectively_equal(&identity) {
        return Ok(CocycleValidation::Invalid { pair: (id_exps.clone(), id_exps) });
    }
    if let Some(aut) = automorphism_group {
        for v in cocycle.values() {
            let v_in_aut = aut.elements().iter().any(|g| {
                g.embed_into(group.spec())
                    .map(|g| g.projectively_equal(v))
                    .unwrap_or(false)
            });
            if !v_in_aut {
                return Err(Error::InvalidCocycle(
                    "a cocycle value is not in the attached automorphism group".into(),
                ));
            }
        }
    }
    let autos: Vec<TowerAutomorphism> =
        elements.iter().map(|e| group.automorphism(e)).collect();
    let pairs: Vec<(usize, usize)> = (0..elements.len())
        .flat_map(|i| (0..elements.len()).map(move |j| (i, j)))
        .collect();
    let failures = exec::map(&pairs, |&(i, j)| {
        let g = &elements[i];
        let h = &elements[j];
        let gh = group.compose_exponents(g, h);
        let a_gh = cocycle.value(&gh);
        let g_of_ah = cocycle.value(h).map_entries(&autos[i]);
        let lhs = cocycle.value(g).mul(&g_of_ah);
        if a_gh.projectively_equal(&lhs) {
            None
        } else {
            Some((g.clone(), h.clone()))
        }
    });
    match failures.into_iter().flatten().next() {
        None => Ok(CocycleValidation::Valid { pairs_checked: pairs.len() }),
        Some(pair) => Ok(CocycleValidation::Invalid { pair }),
    }
}

/// The matrix of the substitution rule [Y : Z : pX]:
/// rows (0,1,0), (0,0,1), (p,0,0).
pub fn paper_twist_matrix(spec: &Arc<TowerSpec>, p: u64) -> Result<Matrix3> {
    let zero = spec.zero();
    let one = spec.one();
    let p_elem = spec.integer(p as i64);
    Matrix3::new(
        spec,
        [
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [p_elem, zero.clone(), zero.clone()],
        ],
    )
}

/// The generator of Gal(L(cos 2pi/7)/L): cos(2pi/7) -> 2 cos(2pi/7)^2 - 1
/// (one of the two nontrivial choices; fixed once here).
pub fn cos_conjugation(spec: &Arc<TowerSpec>) -> Result<TowerAutomorphism> {
    let c = spec.generator("cos2pi7")?;
    let image = c.mul(&c).scale(&BigRational::from_integer(BigInt::from(2))).sub(&spec.one());
    TowerAutomorphism::sending(spec, "cos2pi7", image)
}

/// The generator of Gal(L(cbrt p)/L): cbrt(p) -> zeta3 * cbrt(p).
pub fn cbrt_conjugation(spec: &Arc<TowerSpec>) -> Result<TowerAutomorphism> {
    let zeta = spec.generator("zeta3")?;
    let cbrt = spec.generator("cbrt_p")?;
    TowerAutomorphism::sending(spec, "cbrt_p", zeta.mul(&cbrt))
}

/// The descent cocycle on Gal(M'/L) = C3 x C3: the sigma factor (cosine
/// conjugation) maps to powers of [Y : Z : pX], the tau factor (cube-root
/// conjugation) maps to the identity. Well-defined projectively because
/// A^3 = pI.
pub fn build_paper_cocycle(p: u64, spec: &Arc<TowerSpec>) -> Result<Cocycle> {
    if !crate::arith::is_prime_u64(p) {
        return Err(Error::InvalidParams(format!("p = {p} is not prime")));
    }
    let sigma = cos_conjugation(spec)?;
    let tau = cbrt_conjugation(spec)?;
    let group = GaloisGroupPresentation::new(spec, vec![(sigma, 3), (tau, 3)])?;
    let a = paper_twist_matrix(spec, p)?;
    Cocycle::from_fn(group, |exps| Ok(a.pow(exps[0] as u32)))
}

/// Outcome of a trivialization attempt. Failure is NOT evidence of
/// nontriviality (the averaging is probabilistic); nontriviality only ever
/// comes from the norm obstruction route.
pub fn hilbert90_trivialize(
    cocycle: &Cocycle,
    attempts: u32,
    seed: u64,
) -> Result<Option<Matrix3>> {
    let group = cocycle.group();
    let spec = group.spec();
    let elements = group.elements();
    let autos: Vec<TowerAutomorphism> =
        elements.iter().map(|e| group.automorphism(e)).collect();
    // Trial entries must come from the part of the tower the group moves:
    // entries fixed by every automorphism make the average degenerate (for
    // a C2 twist by diag(1,1,-1) a rational trial always averages to a
    // singular matrix). First try the subfield generated by the moved
    // generators; fall back to the full power basis, whose rational span
    // is Zariski-dense in the matrix space.
    let identity = TowerAutomorphism::identity(spec);
    let moved: Vec<&str> = spec
        .steps()
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            group
                .factors()
                .iter()
                .any(|(g, _)| g.images()[*i] != identity.images()[*i])
        })
        .map(|(_, s)| s.label())
        .collect();
    let moved_basis = sub_power_basis(spec, &moved);
    let full_basis = crate::tower::power_basis(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..attempts {
        let basis = if attempt < attempts / 2 || attempts < 2 {
            &moved_basis
        } else {
            &full_basis
        };
        let mut rows = Vec::with_capacity(3);
        for _ in 0..3 {
            let mut row = Vec::with_capacity(3);
            for _ in 0..3 {
                let mut acc = spec.zero();
                for b in basis {
                    let c = rng.gen_range(-2i64..=2);
                    if c != 0 {
                        acc = acc.add(&b.scale(&BigRational::from_integer(BigInt::from(c))));
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        // Speiser average: B_avg = sum_g lift(a_g) . g(P)
        let mut avg: Option<Matrix3Raw> = None;
        for (idx, auto) in autos.iter().enumerate() {
            let p_mapped: Vec<Vec<TowerElement>> = rows
                .iter()
                .map(|r| r.iter().map(|e| auto.apply(e)).collect())
                .collect();
            let term = mat_mul_raw(spec, cocycle.values()[idx].rows(), &p_mapped);
            avg = Some(match avg {
                None => term,
                Some(a) => mat_add_raw(spec, &a, &term),
            });
        }
        let sum = avg.expect("nonempty group");
        let Some(b_avg) = finalize_matrix(spec, sum) else {
            continue; // singular average; retry with a fresh trial matrix
        };
        let b = match b_avg.inv() {
            Ok(b) => b,
            Err(_) => continue,
        };
        // verify a_g ~ B^{-1} g(B) projectively for every g
        let b_inv = b_avg.clone();
        let ok = elements.iter().enumerate().all(|(idx, _)| {
            let g_of_b = b.map_entries(&autos[idx]);
            let coboundary = b_inv.mul(&g_of_b);
            coboundary.projectively_equal(&cocycle.values()[idx])
        });
        if ok {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Power products of the named generators only (the identity when the list
/// is empty).
fn sub_power_basis(spec: &Arc<TowerSpec>, labels: &[&str]) -> Vec<TowerElement> {
    let mut basis = vec![spec.one()];
    for step in spec.steps() {
        if !labels.contains(&step.label()) {
            continue;
        }
        let gen = spec.generator(step.label()).expect("own label");
        let mut next = basis.clone();
        let mut gen_pow = gen.clone();
        for _ in 1..step.degree() {
            for b in &basis {
                next.push(b.mul(&gen_pow));
            }
            gen_pow = gen_pow.mul(&gen);
        }
        basis = next;
    }
    basis
}

/// Raw 3x3 product where the right factor is plain rows (used before the
/// invertibility of the average is known).
fn mat_mul_raw(
    spec: &Arc<TowerSpec>,
    left: [[TowerElement; 3]; 3],
    right: &[Vec<TowerElement>],
) -> Matrix3Raw {
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let mut row = Vec::with_capacity(3);
        for j in 0..3 {
            let mut acc = spec.zero();
            for (k, right_row) in right.iter().enumerate() {
                acc = acc.add(&left[i][k].mul(&right_row[j]));
            }
            row.push(acc);
        }
        out.push(row);
    }
    out
}

type Matrix3Raw = Vec<Vec<TowerElement>>;

fn mat_add_raw(_spec: &Arc<TowerSpec>, a: &Matrix3Raw, b: &Matrix3Raw) -> Matrix3Raw {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

fn finalize_matrix(spec: &Arc<TowerSpec>, raw: Matrix3Raw) -> Option<Matrix3> {
    let rows = [
        [raw[0][0].clone(), raw[0][1].clone(), raw[0][2].clone()],
        [raw[1][0].clone(), raw[1][1].clone(), raw[1][2].clone()],
        [raw[2][0].clone(), raw[2][1].clone(), raw[2][2].clone()],
    ];
    Matrix3::new(spec, rows).ok()
}

/// Computes F o B, normalizes by the first nonzero coefficient, and
/// verifies every coefficient lies in the target subtower. On success the
/// descended model over the subtower is returned; the error names the
/// first offending coefficient.
pub fn descend_form(
    form: &TernaryForm,
    b: &Matrix3,
    target: &Arc<TowerSpec>,
) -> Result<TernaryForm> {
    let substituted = form.substitute(b)?;
    let normalized = substituted.normalize_leading()?;
    // manual projection to surface the offending coefficient index
    let mut terms = Vec::new();
    for (idx, (exp, coef)) in normalized.terms().enumerate() {
        match coef.project_to(target) {
            Ok(c) => terms.push((*exp, c)),
            Err(_) => return Err(Error::DescentFailed { index: idx }),
        }
    }
    TernaryForm::new(target, normalized.degree(), terms)
}

/// A plane model of the twist over the degree-3 extension L(cbrt p) of L,
/// produced constructively: the restriction of the descent cocycle to
/// Gal(M'/L(cbrt p)) = <sigma> lifts to a genuine GL3 cocycle after
/// rescaling A by 1/cbrt(p) (the rescaled value cubes to the identity), so
/// Speiser averaging applies and the twisted form descends.
pub struct CubicExtensionModel {
    /// Labels of the subtower the model lives over.
    pub field_labels: Vec<String>,
    /// The descended model (coefficients in L(cbrt p)).
    pub model: TernaryForm,
    /// The trivializing matrix over M'.
    pub trivializer: Matrix3,
}

pub fn twist_model_over_cubic_extension(
    u: &BigRational,
    v: &BigRational,
    p: u64,
    seed: u64,
    attempts: u32,
) -> Result<Option<CubicExtensionModel>> {
    let scaled = crate::curves::scaled_form(u, v, p)?;
    let m_prime = crate::tower::spec_m_prime(u, v, p)?;
    let form_up = scaled.form().embed_into(&m_prime)?;
    let sigma = cos_conjugation(&m_prime)?;
    let group = GaloisGroupPresentation::new(&m_prime, vec![(sigma, 3)])?;
    // rescaled lift: A / cbrt(p); cubes to the identity exactly
    let a = paper_twist_matrix(&m_prime, p)?;
    let cbrt = m_prime.generator("cbrt_p")?;
    let a_tilde = a.scale(&cbrt.inv()?)?;
    let cocycle = Cocycle::from_fn(group, |exps| Ok(a_tilde.pow(exps[0] as u32)))?;
    let Some(b) = hilbert90_trivialize(&cocycle, attempts, seed)? else {
        return Ok(None);
    };
    // the twisted model F o B^{-1} has Gal(M'/L(cbrt p))-stable
    // coefficients up to scalar, so it descends after normalization
    let labels: Vec<String> = m_prime
        .steps()
        .iter()
        .map(|s| s.label().to_string())
        .filter(|l| l != "cos2pi7")
        .collect();
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let target = m_prime.sub_spec(&label_refs)?;
    let model = descend_form(&form_up, &b.inv()?, &target)?;
    Ok(Some(CubicExtensionModel { field_labels: labels, model, trivializer: b }))
}
