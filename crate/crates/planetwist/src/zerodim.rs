//! Existence of common zeros of bivariate systems over the algebraic
//! closure, decided exactly.
//!
//! The strategy: strip the common bivariate gcd (a nonconstant gcd is a
//! whole curve of common zeros), bound the x-coordinates of the remaining
//! isolated solutions by the gcd of pairwise y-resultants and pure-x
//! constraints, then work modulo that eliminant with dynamic evaluation:
//! whenever a leading coefficient fails to invert modulo the current
//! modulus, the modulus splits and both branches continue. A branch whose
//! in-quotient gcd keeps positive y-degree certifies a genuine common zero
//! (the branch modulus has a root x0 in the closure, the gcd specializes to
//! a nonconstant polynomial there, and its roots give y0).
//!
//! Everything is generic over the coefficient field, so the same code backs
//! the good-reduction smoothness probe (finite fields) and the exact
//! characteristic-zero fallback (tower fields).

use crate::bipoly::{bi_gcd, resultant_y, BiPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::upoly::Poly;

/// Work accounting for the exact decision procedures. Charges are coarse
/// (coefficient-operation estimates); exceeding the limit aborts with
/// [`Error::WorkBoundExceeded`].
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn unlimited() -> Self {
        Budget { limit: u64::MAX, spent: 0 }
    }

    pub fn charge(&mut self, units: u64) -> Result<()> {
        self.spent = self.spent.saturating_add(units);
        if self.spent > self.limit {
            Err(Error::WorkBoundExceeded { spent: self.spent, limit: self.limit })
        } else {
            Ok(())
        }
    }

    #[allow(dead_code)]
    pub fn spent(&self) -> u64 {
        self.spent
    }
}

/// A certified description of where a common zero lives.
pub enum ZeroLocus<C: Field> {
    /// Every point of the plane is a common zero (all constraints vanished).
    Plane,
    /// Every point of the nonconstant curve h = 0 is a common zero.
    Curve(BiPoly<C>),
    /// Isolated points: x0 ranges over roots of `modulus` (nonconstant);
    /// for each such root the y-coordinates are roots of `section`
    /// specialized at x0. An empty `section` means every y works.
    Points { modulus: Poly<C>, section: Option<BiPoly<C>> },
}

impl<C: Field> std::fmt::Debug for ZeroLocus<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZeroLocus::Plane => write!(f, "Plane"),
            ZeroLocus::Curve(h) => write!(f, "Curve({h:?})"),
            ZeroLocus::Points { modulus, section } => {
                write!(f, "Points{{modulus: {modulus:?}, section: {section:?}}}")
            }
        }
    }
}

/// Decides whether the system has a common zero over the algebraic closure
/// of the coefficient field; returns a locus witness when one exists.
pub fn common_zero_exists<C: Field>(
    ctx: &C,
    polys: &[BiPoly<C>],
    budget: &mut Budget,
) -> Result<Option<ZeroLocus<C>>> {
    let mut active: Vec<BiPoly<C>> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if active.is_empty() {
        return Ok(Some(ZeroLocus::Plane));
    }
    if active.iter().any(|p| p.is_constant()) {
        return Ok(None);
    }
    budget.charge(
        active
            .iter()
            .map(|p| (p.deg_x() as u64 + 1) * (p.deg_y().unwrap_or(0) as u64 + 1))
            .sum(),
    )?;

    // Common factor of the whole system: a nonconstant gcd is a curve of
    // common zeros (a nonconstant polynomial always has zeros over the
    // closure).
    let mut g = active[0].clone();
    for p in &active[1..] {
        g = bi_gcd(ctx, &g, p)?;
        if g.is_constant() {
            break;
        }
    }
    if !g.is_constant() {
        return Ok(Some(ZeroLocus::Curve(g)));
    }

    // The common zero set is now finite. Bound the x-coordinates.
    let mut constraints: Vec<Poly<C>> = Vec::new();
    let ypos: Vec<usize> = (0..active.len())
        .filter(|&i| active[i].deg_y().unwrap_or(0) >= 1)
        .collect();
    for p in &active {
        if p.deg_y() == Some(0) {
            constraints.push(p.y_coeffs()[0].clone());
        }
    }
    let mut vanished_pair: Option<(usize, usize)> = None;
    for a in 0..ypos.len() {
        for b in a + 1..ypos.len() {
            let (pi, pj) = (&active[ypos[a]], &active[ypos[b]]);
            budget.charge(
                ((pi.deg_x() + pj.deg_x() + 2)
                    * (pi.deg_y().unwrap() + pj.deg_y().unwrap() + 2)
                    * 8) as u64,
            )?;
            let r = resultant_y(ctx, pi, pj)?;
            if r.is_zero() {
                vanished_pair.get_or_insert((ypos[a], ypos[b]));
            } else {
                constraints.push(r);
            }
        }
    }

    if constraints.is_empty() {
        // Every pairwise resultant vanished while the overall gcd is
        // trivial: split off one pairwise common factor and recurse on both
        // components. V(f, g) = V(h) union V(f/h, g/h) with h = gcd(f, g).
        let (fi, fj) = vanished_pair.expect("no constraints implies a vanished pair");
        let f = active[fi].clone();
        let gpoly = active[fj].clone();
        let h = bi_gcd(ctx, &f, &gpoly)?;
        debug_assert!(!h.is_constant(), "zero resultant forces a common factor");
        let mut branch_a: Vec<BiPoly<C>> = vec![h.clone()];
        let mut branch_b: Vec<BiPoly<C>> =
            vec![f.exact_div(ctx, &h)?, gpoly.exact_div(ctx, &h)?];
        for (k, p) in active.iter().enumerate() {
            if k != fi && k != fj {
                branch_a.push(p.clone());
                branch_b.push(p.clone());
            }
        }
        if let Some(found) = common_zero_exists(ctx, &branch_a, budget)? {
            return Ok(Some(found));
        }
        return common_zero_exists(ctx, &branch_b, budget);
    }

    // Every common zero's x-coordinate is a root of every constraint
    // (resultants lie in the elimination ideal), hence of their gcd.
    let mut eliminant = constraints[0].clone();
    for c in &constraints[1..] {
        eliminant = eliminant.gcd(ctx, c)?;
        if eliminant.degree() == Some(0) {
            break;
        }
    }
    if eliminant.degree() == Some(0) {
        return Ok(None);
    }
    if ctx.characteristic().is_none() {
        // Radical reduction is only degree-safe in characteristic zero.
        let d = eliminant.derivative(ctx);
        if !d.is_zero() {
            let repeated = eliminant.gcd(ctx, &d)?;
            eliminant = eliminant.exact_div(ctx, &repeated)?;
        }
    }

    // Dynamic evaluation: decide whether any root of the eliminant admits a
    // common y-root of the remaining system.
    active.retain(|p| p.deg_y().unwrap_or(0) >= 1);
    d5_common_root(ctx, eliminant, &active, budget)
}

/// Residue-ring gcd with splitting. Processes a worklist of
/// (modulus, system) branches; any branch certifying a common root wins.
fn d5_common_root<C: Field>(
    ctx: &C,
    modulus: Poly<C>,
    polys: &[BiPoly<C>],
    budget: &mut Budget,
) -> Result<Option<ZeroLocus<C>>> {
    let mut work: Vec<(Poly<C>, Vec<BiPoly<C>>)> = vec![(modulus, polys.to_vec())];
    while let Some((m, system)) = work.pop() {
        budget.charge((m.deg_or_zero() as u64 + 1) * 4)?;
        debug_assert!(m.deg_or_zero() >= 1);
        // Reduce all coefficients; drop polynomials that vanish mod m.
        let mut reduced: Vec<BiPoly<C>> = Vec::new();
        for p in &system {
            let mut ys = Vec::with_capacity(p.y_coeffs().len());
            for c in p.y_coeffs() {
                ys.push(c.rem(ctx, &m)?);
            }
            let q = BiPoly::from_y_coeffs(ys);
            if !q.is_zero() {
                reduced.push(q);
            }
        }
        if reduced.is_empty() {
            // Everything vanishes along every root of m.
            return Ok(Some(ZeroLocus::Points { modulus: m, section: None }));
        }
        // Fold a gcd through the system inside K[x]/(m)[y].
        match quotient_gcd_chain(ctx, &m, &reduced, budget)? {
            ChainOutcome::Split(h) => {
                let rest = m.exact_div(ctx, &h)?;
                if h.deg_or_zero() >= 1 {
                    work.push((h, system.clone()));
                }
                if rest.deg_or_zero() >= 1 {
                    work.push((rest, system));
                }
            }
            ChainOutcome::Gcd(gcd) => {
                match gcd.deg_y() {
                    None => {
                        // all polynomials vanished under reduction mod m
                        return Ok(Some(ZeroLocus::Points { modulus: m, section: None }));
                    }
                    Some(0) => {
                        // Constant-in-y residue c(x). Roots of m where c
                        // vanishes still admit every y of the previous
                        // remainder; split on gcd(c, m).
                        let c = gcd.y_coeffs()[0].clone();
                        let h = c.gcd(ctx, &m)?;
                        if h.deg_or_zero() >= 1 {
                            // rerun the branch on the sub-modulus where the
                            // final remainder vanishes
                            let rest = m.exact_div(ctx, &h)?;
                            work.push((h, system.clone()));
                            if rest.deg_or_zero() >= 1 {
                                // no common root there: c is a unit mod every
                                // factor of rest that survives splitting;
                                // still needs processing to be sure
                                work.push((rest, system));
                            }
                            continue;
                        }
                        // c invertible mod m: no common y-root over any root
                        // of m; branch exhausted.
                    }
                    Some(_) => {
                        return Ok(Some(ZeroLocus::Points { modulus: m, section: Some(gcd) }));
                    }
                }
            }
        }
    }
    Ok(None)
}

enum ChainOutcome<C: Field> {
    /// The modulus must split at this nonconstant proper factor.
    Split(Poly<C>),
    /// Monic gcd of the system modulo the modulus (zero bipoly if all
    /// inputs vanished).
    Gcd(BiPoly<C>),
}

fn quotient_gcd_chain<C: Field>(
    ctx: &C,
    m: &Poly<C>,
    system: &[BiPoly<C>],
    budget: &mut Budget,
) -> Result<ChainOutcome<C>> {
    let mut acc: Option<BiPoly<C>> = None;
    for p in system {
        let next = match &acc {
            None => p.clone(),
            Some(a) => match quotient_gcd(ctx, m, a, p, budget)? {
                ChainOutcome::Split(h) => return Ok(ChainOutcome::Split(h)),
                ChainOutcome::Gcd(g) => g,
            },
        };
        if next.deg_y() == Some(0) {
            // early exit: constant-in-y already
            return Ok(ChainOutcome::Gcd(next));
        }
        acc = Some(next);
    }
    Ok(ChainOutcome::Gcd(acc.unwrap_or_else(BiPoly::zero)))
}

/// Euclidean gcd in (K[x]/(m))[y]; requests a split whenever a leading
/// coefficient is a zero divisor modulo m.
fn quotient_gcd<C: Field>(
    ctx: &C,
    m: &Poly<C>,
    a: &BiPoly<C>,
    b: &BiPoly<C>,
    budget: &mut Budget,
) -> Result<ChainOutcome<C>> {
    let mut f = reduce_mod(ctx, a, m)?;
    let mut g = reduce_mod(ctx, b, m)?;
    loop {
        budget.charge(((m.deg_or_zero() + 1) * (g.y_coeffs().len() + 1) * 4) as u64)?;
        if g.is_zero() {
            return Ok(ChainOutcome::Gcd(f));
        }
        // Locate an invertible leading coefficient for g, dropping true
        // zeros and splitting on zero divisors.
        let mut ys = g.y_coeffs().to_vec();
        let lc_inv = loop {
            let Some(lc) = ys.last() else {
                break None;
            };
            if lc.is_zero() {
                ys.pop();
                continue;
            }
            let (d, s, _) = lc.ext_gcd(ctx, m)?;
            if d.deg_or_zero() == 0 {
                // s * lc = 1 mod m
                break Some(s.rem(ctx, m)?);
            }
            if d.deg_or_zero() == m.deg_or_zero() {
                // lc = 0 mod m entirely
                ys.pop();
                continue;
            }
            return Ok(ChainOutcome::Split(d));
        };
        g = BiPoly::from_y_coeffs(ys);
        let Some(lc_inv) = lc_inv else {
            // g vanished mod m after dropping zero coefficients
            return Ok(ChainOutcome::Gcd(f));
        };
        if g.deg_y() == Some(0) {
            // nonzero constant-in-y; caller decides what to do with it
            return Ok(ChainOutcome::Gcd(g));
        }
        // Make g monic mod m and reduce f by it.
        let monic = BiPoly::from_y_coeffs(
            g.y_coeffs()
                .iter()
                .map(|c| c.mul(ctx, &lc_inv).rem(ctx, m))
                .collect::<Result<Vec<_>>>()?,
        );
        let r = rem_mod(ctx, &f, &monic, m)?;
        f = monic;
        g = r;
    }
}

fn reduce_mod<C: Field>(ctx: &C, p: &BiPoly<C>, m: &Poly<C>) -> Result<BiPoly<C>> {
    let ys = p
        .y_coeffs()
        .iter()
        .map(|c| c.rem(ctx, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(BiPoly::from_y_coeffs(ys))
}

/// Remainder of f by a divisor monic in y, with all coefficient arithmetic
/// performed modulo m.
fn rem_mod<C: Field>(
    ctx: &C,
    f: &BiPoly<C>,
    monic: &BiPoly<C>,
    m: &Poly<C>,
) -> Result<BiPoly<C>> {
    let dd = monic.deg_y().expect("nonzero divisor");
    let mut ys: Vec<Poly<C>> = f
        .y_coeffs()
        .iter()
        .map(|c| c.rem(ctx, m))
        .collect::<Result<Vec<_>>>()?;
    loop {
        while matches!(ys.last(), Some(c) if c.is_zero()) {
            ys.pop();
        }
        if ys.len() <= dd {
            return Ok(BiPoly::from_y_coeffs(ys));
        }
        let factor = ys.last().unwrap().clone();
        let shift = ys.len() - 1 - dd;
        for (j, c) in monic.y_coeffs().iter().enumerate() {
            let t = factor.mul(ctx, c).rem(ctx, m)?;
            ys[shift + j] = ys[shift + j].sub(ctx, &t).rem(ctx, m)?;
        }
    }
}
