//! The Hessian group of order 18 as explicit projective matrices, group
//! closure, invariance checks and diagonal conjugation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec;
use crate::ternary::{Matrix3, TernaryForm};
use crate::tower::{TowerElement, TowerSpec};

/// The three standard generators:
///
/// ```text
/// S = diag(1, zeta3, zeta3^2)        (scaling)
/// T = rows (0,1,0),(0,0,1),(1,0,0)   (coordinate 3-cycle)
/// R = rows (1,0,0),(0,0,1),(0,1,0)   (swap of Y and Z)
/// ```
#[derive(Clone)]
pub struct HessianGenerators {
    pub scaling: Matrix3,
    pub cycle: Matrix3,
    pub swap: Matrix3,
}

impl HessianGenerators {
    pub fn as_vec(&self) -> Vec<Matrix3> {
        vec![self.scaling.clone(), self.cycle.clone(), self.swap.clone()]
    }
}

/// Builds S, T, R over a tower containing zeta3, exactly as printed.
pub fn hessian_generators(spec: &Arc<TowerSpec>) -> Result<HessianGenerators> {
    let zeta = spec.generator("zeta3")?;
    let zeta2 = zeta.mul(&zeta);
    let one = spec.one();
    let zero = spec.zero();
    let scaling = Matrix3::diagonal(spec, [one.clone(), zeta, zeta2])?;
    let cycle = Matrix3::new(
        spec,
        [
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [one.clone(), zero.clone(), zero.clone()],
        ],
    )?;
    let swap = Matrix3::new(
        spec,
        [
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [zero.clone(), one.clone(), zero.clone()],
        ],
    )?;
    Ok(HessianGenerators { scaling, cycle, swap })
}

/// A finite subgroup of PGL3 given by pairwise projectively-inequivalent
/// normalized representatives, closed under products and inverses modulo
/// scalars.
#[derive(Clone)]
pub struct ProjectiveMatrixGroup {
    elements: Vec<Matrix3>,
    generator_indices: Vec<usize>,
}

impl ProjectiveMatrixGroup {
    pub fn elements(&self) -> &[Matrix3] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn contains(&self, m: &Matrix3) -> bool {
        self.elements.iter().any(|e| e.projectively_equal(m))
    }
}

/// Breadth-first closure of the generators under multiplication modulo
/// scalars; deterministic element ordering (discovery order). Errors if the
/// closure exceeds `bound`.
pub fn generate_group(gens: &[Matrix3], bound: usize) -> Result<ProjectiveMatrixGroup> {
    if gens.is_empty() {
        return Err(Error::InvalidParams("no generators".into()));
    }
    let spec = gens[0].spec();
    let mut elements = vec![Matrix3::identity(spec)];
    let mut generator_indices = Vec::new();
    for g in gens {
        let n = g.normalize();
        match elements.iter().position(|e| e.projectively_equal(&n)) {
            Some(i) => generator_indices.push(i),
            None => {
                elements.push(n);
                generator_indices.push(elements.len() - 1);
            }
        }
    }
    let mut frontier: Vec<usize> = (0..elements.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for g in gens {
                let prod = elements[i].mul(g).normalize();
                if !elements.iter().any(|e| e.projectively_equal(&prod)) {
                    elements.push(prod);
                    next.push(elements.len() - 1);
                    if elements.len() > bound {
                        return Err(Error::InvalidParams(format!(
                            "group closure exceeds bound {bound}"
                        )));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(ProjectiveMatrixGroup { elements, generator_indices })
}

/// The scalar lambda with `F o M = lambda F` exactly, when it exists.
pub fn invariance_scalar(form: &TernaryForm, m: &Matrix3) -> Result<Option<TowerElement>> {
    let substituted = form.substitute(m)?;
    Ok(substituted.scalar_multiple_of(form))
}

/// Conjugates every element: { D^{-1} g D }, with projective deduplication.
/// The order is preserved (conjugation is injective modulo scalars).
pub fn conjugate_group(group: &ProjectiveMatrixGroup, d: &Matrix3) -> Result<ProjectiveMatrixGroup> {
    let d_inv = d.inv()?;
    let mut elements: Vec<Matrix3> = Vec::with_capacity(group.order());
    for g in group.elements() {
        let g_here = if g.spec() == d.spec() {
            g.clone()
        } else {
            g.embed_into(d.spec())?
        };
        let conj = d_inv.mul(&g_here).mul(d).normalize();
        if !elements.iter().any(|e| e.projectively_equal(&conj)) {
            elements.push(conj);
        }
    }
    Ok(ProjectiveMatrixGroup {
        elements,
        generator_indices: group.generator_indices.clone(),
    })
}

/// One row of an invariance report.
#[derive(Clone, Debug)]
pub struct InvarianceEntry {
    pub element_index: usize,
    pub scalar: Option<TowerElement>,
}

/// Per-element invariance scalars of a form under a whole group, plus the
/// containment verdict "group is contained in Aut(model)". The checks are
/// independent and run in parallel.
#[derive(Clone, Debug)]
pub struct AutomorphismReport {
    pub entries: Vec<InvarianceEntry>,
    pub group_in_automorphisms: bool,
}

impl AutomorphismReport {
    pub fn passes(&self) -> usize {
        self.entries.iter().filter(|e| e.scalar.is_some()).count()
    }
}

pub fn automorphism_report(
    form: &TernaryForm,
    group: &ProjectiveMatrixGroup,
) -> Result<AutomorphismReport> {
    let results = exec::map(group.elements(), |m| {
        let m_here = if m.spec() == form.spec() {
            m.clone()
        } else {
            match m.embed_into(form.spec()) {
                Ok(e) => e,
                Err(_) => return Err(Error::SpecMismatch),
            }
        };
        invariance_scalar(form, &m_here)
    });
    let mut entries = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        entries.push(InvarianceEntry { element_index: i, scalar: r? });
    }
    let group_in_automorphisms = entries.iter().all(|e| e.scalar.is_some());
    Ok(AutomorphismReport { entries, group_in_automorphisms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::spec_q_zeta3;

    #[test]
    fn generator_orders() {
        let spec = spec_q_zeta3();
        let gens = hessian_generators(&spec).unwrap();
        assert_eq!(gens.scaling.projective_order(5).unwrap(), 3);
        assert_eq!(gens.cycle.projective_order(5).unwrap(), 3);
        assert_eq!(gens.swap.projective_order(5).unwrap(), 2);
        // exact (not just projective) identities
        let id = Matrix3::identity(&spec);
        assert_eq!(gens.scaling.pow(3), id);
        assert_eq!(gens.cycle.pow(3), id);
        assert_eq!(gens.swap.pow(2), id);
    }

    #[test]
    fn hessian_group_order_18() {
        let spec = spec_q_zeta3();
        let gens = hessian_generators(&spec).unwrap();
        let group = generate_group(&gens.as_vec(), 64).unwrap();
        assert_eq!(group.order(), 18);
        for g in group.elements() {
            let ord = g.projective_order(6).unwrap();
            assert!(matches!(ord, 1 | 2 | 3), "unexpected projective order {ord}");
        }
        // subgroup checks: <R> has order 2, <S, T> order 9
        let sub_r = generate_group(std::slice::from_ref(&gens.swap), 8).unwrap();
        assert_eq!(sub_r.order(), 2);
        let sub_st = generate_group(&[gens.scaling.clone(), gens.cycle.clone()], 32).unwrap();
        assert_eq!(sub_st.order(), 9);
    }

    #[test]
    fn fermat_sextic_invariant_under_all_generators() {
        let spec = spec_q_zeta3();
        let gens = hessian_generators(&spec).unwrap();
        let fermat = TernaryForm::new(
            &spec,
            6,
            [
                ((6, 0, 0), spec.one()),
                ((0, 6, 0), spec.one()),
                ((0, 0, 6), spec.one()),
            ],
        )
        .unwrap();
        // sixth powers of cube roots of unity are 1, so S passes too:
        // containment of the generators does not mean the Hessian group is
        // the full automorphism group.
        for g in [&gens.scaling, &gens.cycle, &gens.swap] {
            let lambda = invariance_scalar(&fermat, g).unwrap().expect("invariant");
            assert_eq!(lambda, spec.one());
        }
        let group = generate_group(&gens.as_vec(), 64).unwrap();
        let report = automorphism_report(&fermat, &group).unwrap();
        assert!(report.group_in_automorphisms);
        assert_eq!(report.passes(), 18);
    }

    #[test]
    fn scaling_breaks_generic_quartic() {
        let spec = spec_q_zeta3();
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
        let bad = Matrix3::diagonal(&spec, [spec.one(), spec.one(), spec.integer(2)]).unwrap();
        assert!(invariance_scalar(&f, &bad).unwrap().is_none());
    }

    #[test]
    fn conjugation_by_identity_preserves_group() {
        let spec = spec_q_zeta3();
        let gens = hessian_generators(&spec).unwrap();
        let group = generate_group(&gens.as_vec(), 64).unwrap();
        let conj = conjugate_group(&group, &Matrix3::identity(&spec)).unwrap();
        assert_eq!(conj.order(), 18);
        for g in group.elements() {
            assert!(conj.contains(g));
        }
    }
}
