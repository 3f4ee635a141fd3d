//! The Hessian-invariant sextic family and its scaled relatives.
//!
//! With K = Q(zeta3) and square-free-independent rationals u, v, the
//! coefficient field is L = K(sqrt u, sqrt v). The family is assembled from
//! the classical degree-3 invariants of the Hessian group,
//!
//! ```text
//! phi = XYZ,  psi = X^3 + Y^3 + Z^3,  chi = (XY)^3 + (YZ)^3 + (XZ)^3,
//! ```
//!
//! as `F = c_{phi^2} phi^2 - 6 c_{phi psi} phi psi - 18 c_{psi^2} psi^2 + chi`
//! with weight coefficients built from sqrt u, sqrt v, sqrt uv and zeta3.
//! Construction enforces the square-free guard on F(X,1,1); the scaled
//! family divides the Y and Z weights through by cube roots of a prime p.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith;
use crate::error::{Error, Result};
use crate::ternary::TernaryForm;
use crate::tower::{spec_l, TowerElement, TowerSpec};

type Q = BigRational;

/// Family parameters: u, v rational with u, v, uv all non-squares in Q (so
/// L/K is biquadratic), and optionally a prime p for the scaled family.
#[derive(Clone, Debug, PartialEq)]
pub struct HugginsParams {
    u: Q,
    v: Q,
    p: Option<u64>,
}

impl HugginsParams {
    pub fn new(u: Q, v: Q, p: Option<u64>) -> Result<Self> {
        if u.is_zero() || v.is_zero() {
            return Err(Error::InvalidParams("u and v must be nonzero".into()));
        }
        if arith::is_rational_square(&u) {
            return Err(Error::InvalidParams("u must be a non-square".into()));
        }
        if arith::is_rational_square(&v) {
            return Err(Error::InvalidParams("v must be a non-square".into()));
        }
        let uv = &u * &v;
        if arith::is_rational_square(&uv) {
            return Err(Error::InvalidParams("uv must be a non-square".into()));
        }
        if let Some(p) = p {
            if p < 2 || !arith::is_prime_u64(p) {
                return Err(Error::InvalidParams(format!("p = {p} is not prime")));
            }
        }
        Ok(HugginsParams { u, v, p })
    }

    pub fn u(&self) -> &Q {
        &self.u
    }

    pub fn v(&self) -> &Q {
        &self.v
    }

    pub fn p(&self) -> Option<u64> {
        self.p
    }
}

/// How a [`PlaneCurve`] came to be; the square-free guard applies to the
/// `Huggins` and `Scaled` constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Huggins,
    Scaled,
    Twisted,
    Custom,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Huggins => "huggins",
            Provenance::Scaled => "scaled",
            Provenance::Twisted => "twisted",
            Provenance::Custom => "custom",
        }
    }
}

/// A plane curve: a form together with its degree, genus and provenance.
#[derive(Clone)]
pub struct PlaneCurve {
    form: TernaryForm,
    degree: u32,
    genus: u64,
    provenance: Provenance,
    params: Option<HugginsParams>,
}

impl PlaneCurve {
    pub fn custom(form: TernaryForm) -> Result<Self> {
        let degree = form.degree();
        Ok(PlaneCurve {
            degree,
            genus: genus(degree)?,
            form,
            provenance: Provenance::Custom,
            params: None,
        })
    }

    pub fn form(&self) -> &TernaryForm {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn params(&self) -> Option<&HugginsParams> {
        self.params.as_ref()
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        self.form.spec()
    }
}

/// Genus of a smooth plane curve of degree d: (d-1)(d-2)/2. Requires d >= 3.
pub fn genus(d: u32) -> Result<u64> {
    if d < 3 {
        return Err(Error::InvalidParams(format!(
            "genus formula needs degree >= 3, got {d}"
        )));
    }
    Ok((d as u64 - 1) * (d as u64 - 2) / 2)
}

/// The three classical invariants over the given tower:
/// phi = XYZ, psi = X^3+Y^3+Z^3, chi = (XY)^3+(YZ)^3+(XZ)^3.
pub fn invariant_forms(
    spec: &Arc<TowerSpec>,
) -> (TernaryForm, TernaryForm, TernaryForm) {
    let one = spec.one();
    let phi = TernaryForm::monomial(spec, (1, 1, 1), one.clone()).expect("nonzero");
    let psi = TernaryForm::new(
        spec,
        3,
        [
            ((3, 0, 0), one.clone()),
            ((0, 3, 0), one.clone()),
            ((0, 0, 3), one.clone()),
        ],
    )
    .expect("nonzero");
    let chi = TernaryForm::new(
        spec,
        6,
        [
            ((3, 3, 0), one.clone()),
            ((0, 3, 3), one.clone()),
            ((3, 0, 3), one),
        ],
    )
    .expect("nonzero");
    (phi, psi, chi)
}

/// The weight coefficients over a tower containing zeta3, sqrt_u, sqrt_v:
///
/// ```text
/// c_{phi^2}  = zeta3   sqrt(u) + sqrt(v) + zeta3^2 sqrt(uv)
/// c_{phi psi} = zeta3^2 sqrt(u) + sqrt(v) + zeta3   sqrt(uv)
/// c_{psi^2}  =          sqrt(u) + sqrt(v) +          sqrt(uv) - 1/12
/// ```
pub fn weight_coefficients(
    spec: &Arc<TowerSpec>,
) -> Result<(TowerElement, TowerElement, TowerElement)> {
    let zeta = spec.generator("zeta3")?;
    let zeta2 = zeta.mul(&zeta);
    let su = spec.generator("sqrt_u")?;
    let sv = spec.generator("sqrt_v")?;
    let suv = su.mul(&sv);
    let c_phi2 = zeta.mul(&su).add(&sv).add(&zeta2.mul(&suv));
    let c_phipsi = zeta2.mul(&su).add(&sv).add(&zeta.mul(&suv));
    let twelfth = spec.rational(Q::new(BigInt::from(1), BigInt::from(12)));
    let c_psi2 = su.add(&sv).add(&suv).sub(&twelfth);
    Ok((c_phi2, c_phipsi, c_psi2))
}

/// The ten exponent triples of the sextic family.
pub const HUGGINS_SUPPORT: [(u32, u32, u32); 10] = [
    (6, 0, 0),
    (0, 6, 0),
    (0, 0, 6),
    (3, 3, 0),
    (0, 3, 3),
    (3, 0, 3),
    (4, 1, 1),
    (1, 4, 1),
    (1, 1, 4),
    (2, 2, 2),
];

fn sum_forms(parts: impl IntoIterator<Item = TernaryForm>) -> Result<Option<TernaryForm>> {
    let mut acc: Option<TernaryForm> = None;
    for p in parts {
        acc = match acc {
            None => Some(p),
            Some(a) => a.add(&p)?,
        };
    }
    Ok(acc)
}

/// Assembles `c_{phi^2} phi^2 - 6 c_{phi psi} phi psi - 18 c_{psi^2} psi^2 + chi`
/// over the given tower (which must contain zeta3, sqrt_u, sqrt_v).
fn assemble_family_form(spec: &Arc<TowerSpec>) -> Result<TernaryForm> {
    let (phi, psi, chi) = invariant_forms(spec);
    let (c_phi2, c_phipsi, c_psi2) = weight_coefficients(spec)?;
    let t1 = phi
        .pow(2)
        .scale(&c_phi2)
        .ok_or_else(|| Error::InvalidParams("c_{phi^2} vanished".into()))?;
    let t2 = phi
        .mul(&psi)
        .scale(&c_phipsi.mul(&spec.integer(-6)))
        .ok_or_else(|| Error::InvalidParams("c_{phi psi} vanished".into()))?;
    let t3 = psi
        .pow(2)
        .scale(&c_psi2.mul(&spec.integer(-18)))
        .ok_or_else(|| Error::InvalidParams("c_{psi^2} vanished".into()))?;
    sum_forms([t1, t2, t3, chi])?
        .ok_or_else(|| Error::InvalidParams("family form collapsed to zero".into()))
}

/// Builds the degree-6 family member for (u, v), enforcing the square-free
/// guard on F(X, 1, 1) and checking the ten-monomial support.
pub fn huggins_form(u: &Q, v: &Q) -> Result<PlaneCurve> {
    let params = HugginsParams::new(u.clone(), v.clone(), None)?;
    let spec = spec_l(u, v)?;
    huggins_form_over(&spec, params)
}

/// As [`huggins_form`] over a caller-supplied tower containing the three
/// needed generators (used to compare families over larger towers).
pub fn huggins_form_over(spec: &Arc<TowerSpec>, params: HugginsParams) -> Result<PlaneCurve> {
    let form = assemble_family_form(spec)?;
    let mut support = form.support();
    support.sort_unstable();
    let mut expected = HUGGINS_SUPPORT.to_vec();
    expected.sort_unstable();
    if support != expected {
        return Err(Error::InvalidParams(format!(
            "unexpected monomial support: {support:?}"
        )));
    }
    let sf = form.dehomogenize_x().squarefree_check()?;
    if !sf.squarefree {
        return Err(Error::InvalidParams(
            "square-free guard failed: F(X,1,1) has a repeated root".into(),
        ));
    }
    Ok(PlaneCurve {
        form,
        degree: 6,
        genus: genus(6)?,
        provenance: Provenance::Huggins,
        params: Some(params),
    })
}

/// Builds the scaled family member
///
/// ```text
/// c_{phi^2}/p^2 (XYZ)^2 - 6 c_{phi psi}/p (XYZ) (X^3 + Y^3/p + Z^3/p^2)
///   - 18 c_{psi^2} (X^3 + Y^3/p + Z^3/p^2)^2
///   + X^3 Y^3 / p + (YZ)^3 / p^3 + X^3 Z^3 / p^2
/// ```
///
/// over L itself (the cube roots cancel out of every coefficient).
pub fn scaled_form(u: &Q, v: &Q, p: u64) -> Result<PlaneCurve> {
    let params = HugginsParams::new(u.clone(), v.clone(), Some(p))?;
    let spec = spec_l(u, v)?;
    scaled_form_over(&spec, params)
}

/// As [`scaled_form`] over a caller-supplied tower.
pub fn scaled_form_over(spec: &Arc<TowerSpec>, params: HugginsParams) -> Result<PlaneCurve> {
    let p = params
        .p()
        .ok_or_else(|| Error::InvalidParams("scaled family needs a prime p".into()))?;
    let (c_phi2, c_phipsi, c_psi2) = weight_coefficients(spec)?;
    let inv_p = |k: u32| -> Q {
        Q::new(BigInt::from(1), BigInt::from(p).pow(k))
    };
    let one = spec.one();
    let xyz = TernaryForm::monomial(spec, (1, 1, 1), one.clone())?;
    // X^3 + Y^3/p + Z^3/p^2
    let psi_scaled = TernaryForm::new(
        spec,
        3,
        [
            ((3, 0, 0), one.clone()),
            ((0, 3, 0), spec.rational(inv_p(1))),
            ((0, 0, 3), spec.rational(inv_p(2))),
        ],
    )?;
    let t1 = xyz
        .pow(2)
        .scale(&c_phi2.scale(&inv_p(2)))
        .ok_or_else(|| Error::InvalidParams("c_{phi^2} vanished".into()))?;
    let t2 = xyz
        .mul(&psi_scaled)
        .scale(&c_phipsi.scale(&inv_p(1)).mul(&spec.integer(-6)))
        .ok_or_else(|| Error::InvalidParams("c_{phi psi} vanished".into()))?;
    let t3 = psi_scaled
        .pow(2)
        .scale(&c_psi2.mul(&spec.integer(-18)))
        .ok_or_else(|| Error::InvalidParams("c_{psi^2} vanished".into()))?;
    let chi_scaled = TernaryForm::new(
        spec,
        6,
        [
            ((3, 3, 0), spec.rational(inv_p(1))),
            ((0, 3, 3), spec.rational(inv_p(3))),
            ((3, 0, 3), spec.rational(inv_p(2))),
        ],
    )?;
    let form = sum_forms([t1, t2, t3, chi_scaled])?
        .ok_or_else(|| Error::InvalidParams("scaled form collapsed to zero".into()))?;
    let sf = form.dehomogenize_x().squarefree_check()?;
    if !sf.squarefree {
        return Err(Error::InvalidParams(
            "square-free guard failed for the scaled form".into(),
        ));
    }
    Ok(PlaneCurve {
        form,
        degree: 6,
        genus: genus(6)?,
        provenance: Provenance::Scaled,
        params: Some(params),
    })
}
