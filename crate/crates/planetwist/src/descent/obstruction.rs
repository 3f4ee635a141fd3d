//! Arithmetic obstructions: the norm/inertia argument for cocycle
//! nontriviality, conic solvability over Q(zeta3), the level-2 property,
//! and the quaternion-embedding criterion.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::exec;
use crate::tower::{is_square, spec_q_zeta3, SquareDecision, TowerElement, TowerSpec};

type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormConclusion {
    /// p is inert in the cyclotomic cubic, so its valuation obstructs the
    /// norm equation and the descent cocycle is nontrivial.
    NontrivialCocycle,
    /// No conclusion: the inertia argument does not apply.
    Inconclusive,
}

/// The norm/inertia report for a prime p against the degree-3 field
/// Q(cos 2pi/7).
#[derive(Clone, Debug)]
pub struct NormObstructionReport {
    pub p: u64,
    pub residue_mod_7: u64,
    /// Multiplicative order of p mod 7 (None when 7 | p).
    pub order_mod_7: Option<u64>,
    /// Certified inertia of p in Q(cos 2pi/7); established here only via
    /// order 6 (p primitive mod 7, inert already in Q(zeta7)).
    pub inert: bool,
    pub conclusion: NormConclusion,
    /// The valuation argument, spelled out for the certificate.
    pub narrative: String,
}

/// Decides the norm obstruction: for p = 3 or 5 mod 7 the order of p mod 7
/// is 6, p is inert in Q(cos 2pi/7), and the valuation of any norm from
/// that cubic field lies in 3Z, so p itself (valuation 1) is not a norm and
/// the cocycle class is nontrivial. p = 7 ramifies and every other residue
/// is reported inconclusive.
pub fn norm_obstruction(p: u64) -> Result<NormObstructionReport> {
    if p < 2 {
        return Err(Error::InvalidParams("p must be >= 2".into()));
    }
    if !arith::is_prime_u64(p) {
        return Err(Error::InvalidParams(format!("p = {p} is not prime")));
    }
    let residue = p % 7;
    if residue == 0 {
        return Ok(NormObstructionReport {
            p,
            residue_mod_7: 0,
            order_mod_7: None,
            inert: false,
            conclusion: NormConclusion::Inconclusive,
            narrative: "p = 7 ramifies in Q(zeta7); the inertia argument does not apply"
                .to_string(),
        });
    }
    let order = arith::multiplicative_order(p, 7)?;
    if order == 6 {
        Ok(NormObstructionReport {
            p,
            residue_mod_7: residue,
            order_mod_7: Some(order),
            inert: true,
            conclusion: NormConclusion::NontrivialCocycle,
            narrative: format!(
                "{p} has order 6 mod 7, so it is inert in Q(zeta7) and in its cubic \
                 subfield Q(cos 2pi/7); for an inert prime the p-adic valuation of any \
                 norm from the cubic extension is a multiple of 3, and v_p(p) = 1 is \
                 not, so p is not a norm and the cocycle class is nontrivial"
            ),
        })
    } else {
        Ok(NormObstructionReport {
            p,
            residue_mod_7: residue,
            order_mod_7: Some(order),
            inert: false,
            conclusion: NormConclusion::Inconclusive,
            narrative: format!(
                "{p} has order {order} mod 7 (residue {residue}); the inertia argument \
                 is only applied for order 6, so no conclusion is drawn"
            ),
        })
    }
}

/// Outcome of the norm-equation search -u = x^2 + v y^2 over K = Q(zeta3).
#[derive(Clone, Debug)]
pub enum ConicStatus {
    /// Exact witness: -u = x^2 + v y^2 in the tower.
    Solvable { x: TowerElement, y: TowerElement },
    /// The conic x^2 + v y^2 + u z^2 = 0 is insoluble over Q_l for a prime
    /// l = 1 mod 3 (where the completion of K is Q_l itself), so no global
    /// solution exists.
    LocallyObstructed { prime: u64, hilbert_symbol: i32 },
    /// Neither a witness up to the height bound nor a local obstruction.
    NoSolutionUpToHeight { bound: u32 },
}

impl ConicStatus {
    pub fn is_solvable(&self) -> bool {
        matches!(self, ConicStatus::Solvable { .. })
    }
}

fn odd_prime_divisors(n: &BigInt, cap: u64) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 3u64;
    while BigInt::from(d) * BigInt::from(d) <= n && d <= cap {
        if (&n % d).is_zero() {
            out.push(d);
            while (&n % d).is_zero() {
                n /= d;
            }
        }
        d += 2;
    }
    if n > BigInt::one() && n.is_odd() {
        if let Ok(v) = u64::try_from(&n) {
            if v <= cap && arith::is_prime_u64(v) {
                out.push(v);
            }
        }
    }
    out
}

/// Primes l = 1 mod 3 at which the Hilbert symbol could fail: odd primes
/// dividing a numerator or denominator of u or v. At every other odd prime
/// both arguments are units and the symbol is 1.
fn local_candidate_primes(u: &Q, v: &Q) -> Vec<u64> {
    let mut primes = Vec::new();
    for int in [u.numer(), u.denom(), v.numer(), v.denom()] {
        for p in odd_prime_divisors(int, 1 << 40) {
            if p % 3 == 1 && !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    primes
}

/// Searches for x, y in K = Q(zeta3) with -u = x^2 + v y^2, alongside a
/// local-obstruction scan. Local first: a Hilbert-symbol failure at a prime
/// l = 1 mod 3 (split in K, completion Q_l) settles insolubility outright.
/// Otherwise y runs over height shells (coordinates (a + b zeta3)/c with
/// max(|a|, |b|, c) = h) and x is recovered by the exact square decision,
/// so any solution of height <= bound is found.
pub fn conic_solvability(u: &Q, v: &Q, height_bound: u32) -> Result<ConicStatus> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::InvalidParams("u and v must be nonzero".into()));
    }
    let minus_u = -u.clone();
    let minus_v = -v.clone();
    for l in local_candidate_primes(u, v) {
        if arith::hilbert_symbol_odd(&minus_u, &minus_v, l) == -1 {
            return Ok(ConicStatus::LocallyObstructed { prime: l, hilbert_symbol: -1 });
        }
    }
    match conic_witness_search(u, v, height_bound)? {
        Some((x, y)) => Ok(ConicStatus::Solvable { x, y }),
        None => Ok(ConicStatus::NoSolutionUpToHeight { bound: height_bound }),
    }
}

/// The bare height-bounded witness search (no local scan): y runs over
/// height shells and x is recovered by the exact square decision.
pub fn conic_witness_search(
    u: &Q,
    v: &Q,
    height_bound: u32,
) -> Result<Option<(TowerElement, TowerElement)>> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::InvalidParams("u and v must be nonzero".into()));
    }
    let spec = spec_q_zeta3();
    let zeta = spec.generator("zeta3")?;
    let target = spec.rational(-u.clone()); // -u
    let v_elem = spec.rational(v.clone());
    for h in 0..=height_bound {
        let shell = height_shell(h);
        let found = exec::find_map(&shell, |(a, b, c)| {
            let num = spec.integer(*a).add(&spec.integer(*b).mul(&zeta));
            let y = num.scale(&Q::new(BigInt::one(), BigInt::from(*c)));
            let rest = target.sub(&v_elem.mul(&y.mul(&y)));
            match is_square(&rest) {
                Ok(SquareDecision::Square(x)) => Some((x, y.clone())),
                _ => None,
            }
        });
        if let Some((x, y)) = found {
            debug_assert_eq!(
                x.mul(&x).add(&v_elem.mul(&y.mul(&y))),
                target,
                "conic witness must verify exactly"
            );
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// Coordinate triples (a, b, c) for y = (a + b zeta3)/c with
/// max(|a|, |b|, c) = h, deterministic order, gcd-reduced.
fn height_shell(h: u32) -> Vec<(i64, i64, i64)> {
    if h == 0 {
        return vec![(0, 0, 1)];
    }
    let h = h as i64;
    let mut out = Vec::new();
    for a in -h..=h {
        for b in -h..=h {
            for c in 1..=h {
                if a.abs().max(b.abs()).max(c) != h {
                    continue;
                }
                let g = gcd3(a.unsigned_abs(), b.unsigned_abs(), c.unsigned_abs());
                if g > 1 {
                    continue;
                }
                out.push((a, b, c));
            }
        }
    }
    out
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    a.gcd(&b).gcd(&c)
}

/// Outcome of the level-2 decision for a field K: -1 must not be a square
/// yet must be a sum of two squares.
#[derive(Clone, Debug)]
pub enum LevelTwoOutcome {
    /// K is of level 2; the witness pair satisfies x^2 + y^2 = -1 exactly.
    Level2 { witness: (TowerElement, TowerElement) },
    /// -1 is a square, so the level is 1.
    MinusOneIsSquare { witness: TowerElement },
    /// No witness pair: definitive over Q (sums of real squares are
    /// nonnegative), bounded search elsewhere.
    NoWitness { reason: String },
}

impl LevelTwoOutcome {
    pub fn is_level_two(&self) -> bool {
        matches!(self, LevelTwoOutcome::Level2 { .. })
    }
}

/// Decides the level-2 property for a tower of degree <= 4 with quadratic
/// steps (or plain Q).
pub fn level_two_check(spec: &Arc<TowerSpec>) -> Result<LevelTwoOutcome> {
    let minus_one = spec.integer(-1);
    match is_square(&minus_one)? {
        SquareDecision::Square(w) => return Ok(LevelTwoOutcome::MinusOneIsSquare { witness: w }),
        SquareDecision::NotSquare => {}
    }
    if spec.num_steps() == 0 {
        return Ok(LevelTwoOutcome::NoWitness {
            reason: "a sum of two rational squares is nonnegative and cannot equal -1"
                .to_string(),
        });
    }
    // bounded search over small coordinate vectors
    let candidates = small_elements(spec, 2);
    for x in &candidates {
        let x2 = x.mul(x);
        let rest = minus_one.sub(&x2);
        if let SquareDecision::Square(y) = is_square(&rest)? {
            return Ok(LevelTwoOutcome::Level2 { witness: (x.clone(), y) });
        }
    }
    Ok(LevelTwoOutcome::NoWitness {
        reason: format!(
            "no witness pair with coordinates bounded by 2 over the {}-step tower; \
             not definitive",
            spec.num_steps()
        ),
    })
}

/// Elements with integer coordinates in [-bound, bound] over the power
/// basis, deterministic order.
fn small_elements(spec: &Arc<TowerSpec>, bound: i64) -> Vec<TowerElement> {
    let degree = spec.degree();
    let basis = crate::tower::power_basis(spec);
    debug_assert_eq!(basis.len(), degree);
    let mut out = Vec::new();
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut counters = vec![0usize; degree];
    loop {
        let mut acc = spec.zero();
        for (i, &ci) in counters.iter().enumerate() {
            let c = range[ci];
            if c != 0 {
                acc = acc.add(&basis[i].scale(&Q::from_integer(BigInt::from(c))));
            }
        }
        out.push(acc);
        // odometer
        let mut i = 0;
        loop {
            if i == degree {
                return out;
            }
            counters[i] += 1;
            if counters[i] < range.len() {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of the quaternion-embedding criterion for L = K(sqrt u, sqrt v)
/// over K = Q(zeta3).
#[derive(Clone, Debug)]
pub enum QuaternionOutcome {
    Embeddable { x: TowerElement, y: TowerElement },
    NotEmbeddable { obstruction_prime: u64 },
    Inconclusive { height_bound: u32 },
}

/// The embedding criterion: with K of level 2 and u, v, uv nonsquares in K,
/// L embeds into a quaternion extension of K iff -u is a norm from
/// K(sqrt(-v)), i.e. -u = x^2 + v y^2 with x, y in K.
pub fn quaternion_embedding_check(u: &Q, v: &Q, height_bound: u32) -> Result<QuaternionOutcome> {
    let k = spec_q_zeta3();
    match level_two_check(&k)? {
        LevelTwoOutcome::Level2 { .. } => {}
        other => {
            return Err(Error::InvalidParams(format!(
                "the base field must be of level 2, got {other:?}"
            )))
        }
    }
    for (name, value) in [("u", u.clone()), ("v", v.clone()), ("uv", u * v)] {
        let elem = k.rational(value);
        if is_square(&elem)?.is_square() {
            return Err(Error::InvalidParams(format!(
                "{name} is a square in Q(zeta3); the criterion requires non-squares"
            )));
        }
    }
    Ok(match conic_solvability(u, v, height_bound)? {
        ConicStatus::Solvable { x, y } => QuaternionOutcome::Embeddable { x, y },
        ConicStatus::LocallyObstructed { prime, .. } => {
            QuaternionOutcome::NotEmbeddable { obstruction_prime: prime }
        }
        ConicStatus::NoSolutionUpToHeight { bound } => {
            QuaternionOutcome::Inconclusive { height_bound: bound }
        }
    })
}
