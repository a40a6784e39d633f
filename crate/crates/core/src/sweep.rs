//! Finite piecewise-linear sweeping-out of a complex onto a subcomplex
//! enlarged by a finite point set.
//!
//! Each round removes the interiors of all maximal simplexes whose closure
//! is not covered by the kept points and the subcomplex, retracting each
//! such closed simplex radially from an interior puncture onto its
//! boundary. For a simplex of positive dimension outside `K` the closure is
//! infinite while the point set is finite, so only vertices can be kept by
//! the points.

use num_traits::{Signed, Zero};

use crate::complex::{Point, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Punctures chosen in one round, one per removed maximal simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRound {
    pub removed: Vec<(Simplex, Point)>,
}

impl SweepRound {
    fn puncture_of(&self, s: &Simplex) -> Option<&Point> {
        self.removed
            .binary_search_by(|(r, _)| r.cmp(s))
            .ok()
            .map(|i| &self.removed[i].1)
    }

    /// The round's retraction: identity off removed simplexes, radial
    /// projection from the puncture on them.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        let carrier = p.support();
        match self.puncture_of(&carrier) {
            None => Ok(p.clone()),
            Some(d) if d == p => Err(Error::OutsideDomain(p.to_string())),
            Some(d) => radial_retraction(&carrier, d, p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepResult {
    pub domain: SimplicialComplex,
    pub reduced: SimplicialComplex,
    pub rounds: Vec<SweepRound>,
    /// Images of the input points, in input order.
    pub images: Vec<Point>,
}

impl SweepResult {
    /// Composite retraction. Fails outside the domain: points off the
    /// complex, or points that reach a puncture.
    pub fn evaluate(&self, p: &Point) -> Result<Point> {
        p.carrier(&self.domain)?;
        let mut cur = p.clone();
        for r in &self.rounds {
            cur = r.apply(&cur)?;
        }
        Ok(cur)
    }
}

/// Exit point of the ray from an interior point `center` through `x`:
/// `center + t (x - center)` with the largest `t` keeping every
/// barycentric coordinate nonnegative.
pub fn radial_retraction(sigma: &Simplex, center: &Point, x: &Point) -> Result<Point> {
    if center.support() != *sigma {
        return Err(Error::NotInterior(sigma.to_string()));
    }
    if !x.support().is_subset(sigma) {
        return Err(Error::SupportNotSimplex(x.support().to_string()));
    }
    if x == center {
        return Err(Error::AtCenter);
    }
    let t = sigma
        .vertices()
        .iter()
        .filter_map(|v| {
            let c = center.coord(v);
            let d = &c - x.coord(v);
            d.is_positive().then(|| c / d)
        })
        .min()
        .expect("x != center on the simplex forces a decreasing coordinate");
    Point::new(sigma.vertices().iter().map(|v| {
        let c = center.coord(v);
        let val = &c + &t * (x.coord(v) - &c);
        (v.clone(), val)
    }))
}

/// Positive compositions of `total` into `parts`, in lexicographic order.
fn compositions(total: usize, parts: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (parts >= 1 && total >= parts).then(|| {
        let mut v = vec![1; parts];
        v[parts - 1] = total - (parts - 1);
        v
    });
    std::iter::from_fn(move || {
        let cur = next.take()?;
        // advance: bump the rightmost non-final part whose tail has slack
        let k = cur.len();
        let mut succ = None;
        for i in (0..k.saturating_sub(1)).rev() {
            let tail: usize = cur[i + 1..].iter().sum();
            if tail > k - 1 - i {
                let mut n = cur[..=i].to_vec();
                n[i] += 1;
                let head: usize = n.iter().sum();
                n.extend(std::iter::repeat_n(1, k - 1 - i - 1));
                n.push(total - head - (k - 1 - i - 1));
                succ = Some(n);
                break;
            }
        }
        next = succ;
        Some(cur)
    })
}

/// Deterministic puncture in the interior of `sigma` avoiding `avoid`: the
/// barycenter when admissible, otherwise the first midpoint between the
/// barycenter and an interior lattice point of denominator
/// `1 + |σ|(1 + |avoid|)` that is not in `avoid`.
pub fn choose_puncture(sigma: &Simplex, avoid: &[Point]) -> Result<Point> {
    let bary = Point::barycenter(sigma);
    if !avoid.contains(&bary) {
        return Ok(bary);
    }
    let denom = 1 + sigma.len() * (1 + avoid.len());
    let half = Q::new(1.into(), 2.into());
    for comp in compositions(denom, sigma.len()) {
        let lattice = Point::new(
            sigma
                .vertices()
                .iter()
                .zip(&comp)
                .map(|(v, &n)| (v.clone(), Q::new(n.into(), denom.into()))),
        )?;
        let mid = Point::convex_combination([(half.clone(), &bary), (half.clone(), &lattice)])?;
        if !avoid.contains(&mid) {
            return Ok(mid);
        }
    }
    Err(Error::NotInterior(sigma.to_string()))
}

/// Maximal simplexes of `current` that the round removes.
pub fn removable(current: &SimplicialComplex, keep: &SimplicialComplex, points: &[Point]) -> Vec<Simplex> {
    let mut out: Vec<Simplex> = current
        .maximal_simplexes()
        .into_iter()
        .filter(|s| {
            !keep.contains(s)
                && !(s.len() == 1 && points.contains(&Point::vertex(s.vertices()[0].clone())))
        })
        .collect();
    out.sort();
    out
}

pub fn sweep_out(l: &SimplicialComplex, k: &SimplicialComplex, a: &[Point]) -> Result<SweepResult> {
    k.require_subcomplex_of(l)?;
    for p in a {
        p.carrier(l)?;
    }
    let mut current = l.clone();
    let mut points: Vec<Point> = a.to_vec();
    let mut rounds = Vec::new();
    loop {
        let gone = removable(&current, k, &points);
        if gone.is_empty() {
            break;
        }
        let removed = gone
            .iter()
            .map(|s| Ok((s.clone(), choose_puncture(s, &points)?)))
            .collect::<Result<Vec<_>>>()?;
        let round = SweepRound { removed };
        points = points.iter().map(|p| round.apply(p)).collect::<Result<_>>()?;
        current = current.filter(|s| gone.binary_search(s).is_err());
        rounds.push(round);
    }
    debug_assert!(points.iter().all(|p| current.contains(&p.support())));
    debug_assert!(points.iter().all(|p| !p.coords().values().any(Zero::is_zero)));
    Ok(SweepResult {
        domain: l.clone(),
        reduced: current,
        rounds,
        images: points,
    })
}
