//! Smoothness certification for plane curves.
//!
//! Two routes share one chart decomposition:
//!
//! * [`smoothness_probe`] reduces the form at a finite placement and decides
//!   whether the reduced curve has a singular point over the algebraic
//!   closure of F_{q^m}. A smooth special fiber certifies smoothness in
//!   characteristic zero (the family is flat), so `SmoothCertified` is a
//!   genuine certificate; `SingularAtReduction` is NOT a disproof.
//! * [`smoothness_exact`] runs the same elimination over the tower itself,
//!   guarded by a work budget. It decides smoothness outright and serves as
//!   the fallback and refutation route.
//!
//! A projective singular point lives on one of three charts: Z = 1, the
//! line Z = 0 with Y = 1, or the vertex (1 : 0 : 0). On each chart the
//! partial derivatives (plus the form itself when the characteristic
//! divides the degree, where the Euler relation gives nothing) feed the
//! common-zero decision in `zerodim`.

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::{linear_roots, FinitePlacement};
use crate::ternary::TernaryForm;
use crate::upoly::Poly;
use crate::zerodim::{common_zero_exists, Budget, ZeroLocus};

/// Default work budget for the exact route, in coarse coefficient
/// operations. Enough for rational forms of small degree; the full sextic
/// over the degree-8 tower needs a larger explicit bound.
pub const DEFAULT_EXACT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Affine chart Z = 1 with coordinates (x, y).
    AffineZ,
    /// The line Z = 0 with Y = 1, coordinate x.
    LineZ,
    /// The single point (1 : 0 : 0).
    Vertex,
}

/// Outcome of the good-reduction probe.
#[derive(Debug)]
pub enum ProbeOutcome {
    /// The reduced curve is smooth over the closure of F_{q^m}; this
    /// certifies smoothness of the characteristic-zero curve.
    SmoothCertified { q: u64, extension_degree: usize },
    /// The reduction is singular; carries the chart, a human-readable
    /// description of the locus, and a concrete point when one lives in
    /// F_{q^m} itself.
    SingularAtReduction {
        q: u64,
        chart: Chart,
        locus: String,
        point: Option<[String; 3]>,
    },
    /// The placement does not apply: a denominator vanishes or the form
    /// does not reduce with full degree.
    Inadmissible { reason: String },
}

impl ProbeOutcome {
    pub fn is_smooth_certificate(&self) -> bool {
        matches!(self, ProbeOutcome::SmoothCertified { .. })
    }
}

/// Outcome of the exact characteristic-zero decision.
#[derive(Debug)]
pub enum ExactOutcome {
    Smooth,
    /// Singular, with a description of the point field: the chart, the
    /// eliminant whose roots carry the singular x-coordinates, and the
    /// y-section when relevant.
    Singular { chart: Chart, description: String },
}

/// A form flattened to exponent/coefficient pairs over an arbitrary field
/// context, the shared currency of both smoothness routes.
struct FormTerms<C: Field> {
    degree: u32,
    terms: Vec<((u32, u32, u32), C::Elem)>,
}

impl<C: Field> FormTerms<C> {
    fn partial(&self, ctx: &C, axis: usize) -> FormTerms<C> {
        let mut terms = Vec::new();
        for ((i, j, k), c) in &self.terms {
            let (e, exp) = match axis {
                0 => (*i, (i.wrapping_sub(1), *j, *k)),
                1 => (*j, (*i, j.wrapping_sub(1), *k)),
                _ => (*k, (*i, *j, k.wrapping_sub(1))),
            };
            if e == 0 {
                continue;
            }
            let coef = ctx.mul(c, &ctx.from_i64(e as i64));
            if !ctx.is_zero(&coef) {
                terms.push(((exp.0, exp.1, exp.2), coef));
            }
        }
        FormTerms { degree: self.degree.saturating_sub(1), terms }
    }

    /// Specializes Z = 1: a bivariate polynomial in (x, y).
    fn chart_affine(&self, ctx: &C) -> BiPoly<C> {
        let terms: Vec<(usize, usize, C::Elem)> = self
            .terms
            .iter()
            .map(|((i, j, _), c)| (*i as usize, *j as usize, c.clone()))
            .collect();
        BiPoly::from_terms(ctx, &terms)
    }

    /// Specializes Y = 1, Z = 0: a univariate polynomial in x.
    fn chart_line(&self, ctx: &C) -> Poly<C> {
        let mut coeffs: Vec<C::Elem> = Vec::new();
        for ((i, _, k), c) in &self.terms {
            if *k != 0 {
                continue;
            }
            let i = *i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, ctx.zero());
            }
            coeffs[i] = ctx.add(&coeffs[i], c);
        }
        Poly::from_coeffs(ctx, coeffs)
    }

    /// Evaluates at the vertex (1, 0, 0): the X^degree coefficient.
    fn at_vertex(&self, ctx: &C) -> C::Elem {
        for ((i, j, k), c) in &self.terms {
            if *j == 0 && *k == 0 && *i == self.degree {
                return c.clone();
            }
        }
        ctx.zero()
    }
}

/// Locates a singular point of the projective curve over the closure, chart
/// by chart. Returns the first chart carrying one.
fn singular_locus<C: Field>(
    ctx: &C,
    form: &FormTerms<C>,
    budget: &mut Budget,
) -> Result<Option<(Chart, Option<ZeroLocus<C>>)>> {
    let mut system: Vec<FormTerms<C>> = (0..3).map(|axis| form.partial(ctx, axis)).collect();
    if ctx.char_divides(form.degree as u64) {
        // Euler's relation degenerates; the form itself is an independent
        // constraint.
        system.push(FormTerms { degree: form.degree, terms: form.terms.clone() });
    }

    // Chart Z = 1.
    let affine: Vec<BiPoly<C>> = system.iter().map(|p| p.chart_affine(ctx)).collect();
    if let Some(locus) = common_zero_exists(ctx, &affine, budget)? {
        return Ok(Some((Chart::AffineZ, Some(locus))));
    }

    // Line Z = 0, Y = 1: univariate gcd decides existence over the closure.
    let line: Vec<Poly<C>> = system.iter().map(|p| p.chart_line(ctx)).collect();
    let mut gcd: Option<Poly<C>> = None;
    let mut all_zero = true;
    for f in &line {
        if f.is_zero() {
            continue;
        }
        all_zero = false;
        gcd = Some(match gcd {
            None => f.clone(),
            Some(g) => g.gcd(ctx, f)?,
        });
        if gcd.as_ref().map(|g| g.deg_or_zero()) == Some(0) {
            break;
        }
    }
    if all_zero {
        return Ok(Some((Chart::LineZ, None)));
    }
    if let Some(g) = gcd {
        if g.deg_or_zero() >= 1 {
            return Ok(Some((
                Chart::LineZ,
                Some(ZeroLocus::Points { modulus: g, section: None }),
            )));
        }
    }

    // Vertex (1 : 0 : 0).
    if system.iter().all(|p| ctx.is_zero(&p.at_vertex(ctx))) {
        return Ok(Some((Chart::Vertex, None)));
    }
    Ok(None)
}

fn locus_description<C: Field>(chart: Chart, locus: &Option<ZeroLocus<C>>) -> String {
    match locus {
        None => match chart {
            Chart::Vertex => "all partials vanish at (1:0:0)".to_string(),
            _ => "all constraints vanish on the whole chart".to_string(),
        },
        Some(ZeroLocus::Plane) => "all constraints vanish on the whole chart".to_string(),
        Some(ZeroLocus::Curve(h)) => format!(
            "one-dimensional singular locus (common factor of x-degree {} / y-degree {:?})",
            h.deg_x(),
            h.deg_y()
        ),
        Some(ZeroLocus::Points { modulus, section }) => format!(
            "isolated singular points over roots of a degree-{} eliminant{}",
            modulus.deg_or_zero(),
            match section {
                Some(s) => format!(", y-section of degree {:?}", s.deg_y()),
                None => ", any y".to_string(),
            }
        ),
    }
}

/// Formats an element of F_{q^m} as a polynomial in the generator t.
fn format_fq(e: &crate::finite::FqElem) -> String {
    let mut parts = Vec::new();
    for (i, c) in e.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        match i {
            0 => parts.push(format!("{c}")),
            1 if *c == 1 => parts.push("t".to_string()),
            1 => parts.push(format!("{c}*t")),
            _ if *c == 1 => parts.push(format!("t^{i}")),
            _ => parts.push(format!("{c}*t^{i}")),
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Best-effort extraction of a concrete singular point with coordinates in
/// F_{q^m} itself (singular points may genuinely live in extensions, in
/// which case this returns None and the locus description stands).
fn extract_point(
    field: &crate::finite::Fq,
    chart: Chart,
    locus: &Option<ZeroLocus<crate::finite::Fq>>,
) -> Option<[String; 3]> {
    let zero = || format_fq(&field.zero());
    let one = || format_fq(&field.one());
    let coords = |chart: Chart, x: String, y: String| match chart {
        Chart::AffineZ => [x, y, one()],
        Chart::LineZ => [x, one(), zero()],
        Chart::Vertex => [one(), zero(), zero()],
    };
    match (chart, locus) {
        (Chart::Vertex, _) => Some(coords(chart, zero(), zero())),
        (_, None) | (_, Some(ZeroLocus::Plane)) => Some(coords(chart, zero(), zero())),
        (_, Some(ZeroLocus::Curve(h))) => {
            // scan small x for a y-root in the base field
            let mut idx = 0u64;
            while let Some(x0) = field.sample_point(idx) {
                idx += 1;
                let fy = h.eval_x(field, &x0);
                if fy.is_zero() {
                    return Some(coords(chart, format_fq(&x0), zero()));
                }
                if fy.deg_or_zero() >= 1 {
                    if let Ok(roots) = linear_roots(field, &fy) {
                        if let Some(y0) = roots.first() {
                            return Some(coords(chart, format_fq(&x0), format_fq(y0)));
                        }
                    }
                }
                if idx > 200 {
                    break;
                }
            }
            None
        }
        (_, Some(ZeroLocus::Points { modulus, section })) => {
            let xs = linear_roots(field, modulus).ok()?;
            for x0 in xs {
                match section {
                    None => return Some(coords(chart, format_fq(&x0), zero())),
                    Some(s) => {
                        let fy = s.eval_x(field, &x0);
                        if fy.is_zero() {
                            return Some(coords(chart, format_fq(&x0), zero()));
                        }
                        if fy.deg_or_zero() >= 1 {
                            if let Ok(roots) = linear_roots(field, &fy) {
                                if let Some(y0) = roots.first() {
                                    return Some(coords(
                                        chart,
                                        format_fq(&x0),
                                        format_fq(y0),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            None
        }
    }
}

/// Good-reduction probe at a fixed placement.
pub fn smoothness_probe(form: &TernaryForm, placement: &FinitePlacement) -> Result<ProbeOutcome> {
    let field = placement.field().clone();
    let mut terms = Vec::new();
    for (exp, coef) in form.terms() {
        match placement.reduce(coef) {
            Ok(c) => {
                if !field.is_zero(&c) {
                    terms.push((*exp, c));
                }
            }
            Err(Error::InadmissiblePlacement(reason)) => {
                return Ok(ProbeOutcome::Inadmissible { reason });
            }
            Err(e) => return Err(e),
        }
    }
    if terms.is_empty() {
        return Ok(ProbeOutcome::Inadmissible {
            reason: format!("form vanishes identically mod {}", placement.q()),
        });
    }
    let reduced = FormTerms { degree: form.degree(), terms };
    let mut budget = Budget::unlimited();
    match singular_locus(&field, &reduced, &mut budget)? {
        None => Ok(ProbeOutcome::SmoothCertified {
            q: placement.q(),
            extension_degree: placement.extension_degree(),
        }),
        Some((chart, locus)) => Ok(ProbeOutcome::SingularAtReduction {
            q: placement.q(),
            chart,
            locus: locus_description(chart, &locus),
            point: extract_point(&field, chart, &locus),
        }),
    }
}

/// Sweeps placements with ascending primes up to `qmax` until one certifies
/// smoothness. Returns the certifying outcome, or the last outcome seen.
pub fn certify_smooth_up_to(form: &TernaryForm, qmax: u64) -> Result<ProbeOutcome> {
    let spec = form.spec();
    let mut qmin = 1u64;
    let mut last: Option<ProbeOutcome> = None;
    loop {
        let placement = match crate::finite::find_placement_above(spec, qmin, qmax) {
            Ok(p) => p,
            Err(Error::NoAdmissiblePrime { .. }) => {
                return last.ok_or(Error::NoAdmissiblePrime { qmax });
            }
            Err(e) => return Err(e),
        };
        qmin = placement.q();
        let outcome = smoothness_probe(form, &placement)?;
        if outcome.is_smooth_certificate() {
            return Ok(outcome);
        }
        last = Some(outcome);
    }
}

/// Exact smoothness over the tower, bounded by `work_limit` coarse
/// operations. Errors with [`Error::WorkBoundExceeded`] when the budget
/// runs out; the caller may raise it.
pub fn smoothness_exact(form: &TernaryForm, work_limit: u64) -> Result<ExactOutcome> {
    let ctx = form.spec().top_ctx();
    let terms: Vec<((u32, u32, u32), crate::tower::Nested)> = form
        .terms()
        .map(|(exp, coef)| (*exp, coef.rep().clone()))
        .collect();
    let flat = FormTerms { degree: form.degree(), terms };
    let mut budget = Budget::new(work_limit);
    match singular_locus(&ctx, &flat, &mut budget)? {
        None => Ok(ExactOutcome::Smooth),
        Some((chart, locus)) => Ok(ExactOutcome::Singular {
            chart,
            description: locus_description(chart, &locus),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::find_placement;
    use crate::tower::TowerSpec;

    #[test]
    fn fermat_sextic_probe_smooth() {
        let spec = TowerSpec::rationals();
        let f = TernaryForm::new(
            &spec,
            6,
            [
                ((6, 0, 0), spec.one()),
                ((0, 6, 0), spec.one()),
                ((0, 0, 6), spec.one()),
            ],
        )
        .unwrap();
        let placement = find_placement(&spec, 10).unwrap();
        assert_eq!(placement.q(), 2);
        // 2 and 3 divide the degree or the partial coefficients; probe at 7
        let placement7 = crate::finite::find_placement_above(&spec, 5, 10).unwrap();
        assert_eq!(placement7.q(), 7);
        let outcome = smoothness_probe(&f, &placement7).unwrap();
        assert!(outcome.is_smooth_certificate(), "got {outcome:?}");
    }

    #[test]
    fn cuspidal_cubic_probe_singular_at_origin() {
        let spec = TowerSpec::rationals();
        // Z Y^2 - X^3 has a cusp at (0:0:1).
        let f = TernaryForm::new(
            &spec,
            3,
            [((0, 2, 1), spec.one()), ((3, 0, 0), spec.integer(-1))],
        )
        .unwrap();
        let placement = crate::finite::find_placement_above(&spec, 5, 10).unwrap();
        let outcome = smoothness_probe(&f, &placement).unwrap();
        match outcome {
            ProbeOutcome::SingularAtReduction { chart, point, .. } => {
                assert_eq!(chart, Chart::AffineZ);
                let p = point.expect("cusp lies in the prime field");
                assert_eq!(p, ["0".to_string(), "0".to_string(), "1".to_string()]);
            }
            other => panic!("expected singular reduction, got {other:?}"),
        }
    }

    #[test]
    fn fermat_quartic_exact_smooth() {
        let spec = TowerSpec::rationals();
        let f = TernaryForm::new(
            &spec,
            4,
            [
                ((4, 0, 0), spec.one()),
                ((0, 4, 0), spec.one()),
                ((0, 0, 4), spec.one()),
            ],
        )
        .unwrap();
        match smoothness_exact(&f, DEFAULT_EXACT_BUDGET).unwrap() {
            ExactOutcome::Smooth => {}
            other => panic!("Fermat quartic is smooth, got {other:?}"),
        }
    }

    #[test]
    fn multiple_component_exact_singular() {
        let spec = TowerSpec::rationals();
        // X^2 (X^2 + Y^2 + Z^2): singular along X = 0 meets the conic.
        let f = TernaryForm::new(
            &spec,
            4,
            [
                ((4, 0, 0), spec.one()),
                ((2, 2, 0), spec.one()),
                ((2, 0, 2), spec.one()),
            ],
        )
        .unwrap();
        match smoothness_exact(&f, DEFAULT_EXACT_BUDGET).unwrap() {
            ExactOutcome::Singular { .. } => {}
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    #[ignore = "runs ~3 minutes; the probe already certifies. cargo test -- --ignored"]
    fn huggins_sextic_exact_smooth_cross_check() {
        let u = num_rational::BigRational::from_integer(2.into());
        let v = num_rational::BigRational::from_integer(13.into());
        let curve = crate::curves::huggins_form(&u, &v).unwrap();
        match smoothness_exact(curve.form(), u64::MAX).unwrap() {
            ExactOutcome::Smooth => {}
            other => panic!("the sextic is smooth over the closure, got {other:?}"),
        }
    }

    #[test]
    fn work_bound_surfaces() {
        let spec = TowerSpec::rationals();
        let f = TernaryForm::new(
            &spec,
            6,
            [
                ((6, 0, 0), spec.one()),
                ((0, 6, 0), spec.one()),
                ((0, 0, 6), spec.one()),
                ((2, 2, 2), spec.integer(7)),
            ],
        )
        .unwrap();
        assert!(matches!(
            smoothness_exact(&f, 10),
            Err(Error::WorkBoundExceeded { .. })
        ));
    }
}
