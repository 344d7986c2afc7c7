//! Touching cuts for `n` atomic measures in `n` dimensions.
//!
//! Every returned hyperplane bisects each measure and passes through one atom
//! of each. The search walks atom tuples `(a_1, …, a_n)` in lexicographic
//! index order:
//!
//! 1. tuples whose affine hull is a hyperplane are tested directly;
//! 2. tuples spanning an (n−2)-flat are completed by sweeping the pencil of
//!    hyperplanes through that flat (critical positions and one
//!    representative per open arc);
//! 3. if both fail, atoms are displaced symbolically along distinct
//!    moment-curve directions at shrinking scales, the displaced instance is
//!    solved, and the winning tuple is re-completed against the original atoms.
//!
//! All arithmetic is exact.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bisection::{evaluate_cut, Atom, AtomicMeasure, CutReport};
use crate::error::{Error, Result};
use crate::geometry::{dot, reduce_tuple, Hyperplane, Point, Reduced};
use crate::parallel::Parallelism;
use crate::scalar::{Rational, Scalar};

/// `n` atomic measures in `ℝⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    measures: Vec<AtomicMeasure<Rational>>,
}

impl Instance {
    pub fn new(measures: Vec<AtomicMeasure<Rational>>) -> Result<Self> {
        let first = measures.first().ok_or(Error::Empty("instance"))?;
        let n = first.dim();
        if measures.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} measures given in dimension {n}; the count must equal the dimension",
                measures.len()
            )));
        }
        crate::bisection::check_uniform_dim(&measures, n)?;
        Ok(Instance { measures })
    }

    pub fn dim(&self) -> usize {
        self.measures.len()
    }

    pub fn measures(&self) -> &[AtomicMeasure<Rational>] {
        &self.measures
    }

    /// Number of atom tuples, one atom per measure.
    pub fn tuple_count(&self) -> u128 {
        self.measures
            .iter()
            .fold(1u128, |acc, m| acc.saturating_mul(m.len() as u128))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub parallelism: Parallelism,
    /// Largest tuple count `enumerate_all_cuts` accepts.
    pub enumerate_cap: u128,
    pub perturbation_rounds: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            parallelism: Parallelism::default(),
            enumerate_cap: 1_000_000,
            perturbation_rounds: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchPhase {
    FullRank,
    PencilSweep,
    Perturbation,
    /// Family of dimension ≥ 2 completed through extra atoms.
    VertexCompletion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub phase: SearchPhase,
    /// Tuples visited in lexicographic order up to and including the winner, summed over phases.
    pub candidates_examined: u128,
    /// Deficient tuples whose pencil was swept before the winner.
    pub completions_used: u128,
    pub perturbation_retries: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub hyperplane: Hyperplane<Rational>,
    pub report: CutReport<Rational>,
    /// One atom index per measure, each lying on the hyperplane.
    pub witness_tuple: Vec<usize>,
    pub diagnostics: Diagnostics,
}

/// Find a bisecting hyperplane through one atom of each measure.
pub fn solve_touching_cut(inst: &Instance, config: &SolverConfig) -> Result<Solution> {
    let search = Search::new(inst, config.parallelism)?;
    let total = search.total;

    if let Some((idx, plane)) = search.first_full_rank() {
        let diag = Diagnostics {
            phase: SearchPhase::FullRank,
            candidates_examined: idx as u128 + 1,
            completions_used: 0,
            perturbation_retries: 0,
        };
        return search.solution(plane, search.decode(idx), diag);
    }
    if let Some((idx, plane)) = search.first_pencil() {
        let diag = Diagnostics {
            phase: SearchPhase::PencilSweep,
            candidates_examined: total as u128 + idx as u128 + 1,
            completions_used: search.count_pencils(idx + 1),
            perturbation_retries: 0,
        };
        return search.solution(plane, search.decode(idx), diag);
    }

    let pencils = search.count_pencils(total);
    for round in 0..config.perturbation_rounds {
        let Some(shifted) = search.perturbed(round) else {
            continue;
        };
        let Ok(shifted_search) = Search::new(&shifted, config.parallelism) else {
            continue;
        };
        let found = shifted_search
            .first_full_rank()
            .or_else(|| shifted_search.first_pencil());
        let Some((idx, _)) = found else { continue };
        let tuple = shifted_search.decode(idx);
        if let Some(plane) = search.complete(&tuple, false).into_iter().next() {
            let diag = Diagnostics {
                phase: SearchPhase::Perturbation,
                candidates_examined: 2 * total as u128,
                completions_used: pencils,
                perturbation_retries: round + 1,
            };
            return search.solution(plane, tuple, diag);
        }
    }
    Err(Error::RetryLimit {
        retries: config.perturbation_rounds,
        nearest_miss: search.nearest_miss(),
    })
}

/// Every distinct touching cut through one atom per measure, in order of the
/// first tuple producing it. Deficient tuples contribute their critical
/// positions (and arc representatives for pencils).
pub fn enumerate_all_cuts(inst: &Instance, config: &SolverConfig) -> Result<Vec<Solution>> {
    let size = inst.tuple_count();
    if size > config.enumerate_cap {
        return Err(Error::CapExceeded {
            what: "tuple count",
            size,
            cap: config.enumerate_cap,
        });
    }
    let search = Search::new(inst, config.parallelism)?;
    let per_tuple = config.parallelism.map_collect(search.total, |idx| {
        search.complete(&search.decode(idx), true)
    });

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (idx, planes) in per_tuple.into_iter().enumerate() {
        for plane in planes {
            if seen.insert(plane.clone()) {
                let tuple = search.decode(idx);
                let phase = match search.tuple_rank(&tuple) {
                    r if r + 1 == search.n => SearchPhase::FullRank,
                    r if r + 2 == search.n => SearchPhase::PencilSweep,
                    _ => SearchPhase::VertexCompletion,
                };
                let diag = Diagnostics {
                    phase,
                    candidates_examined: idx as u128 + 1,
                    completions_used: 0,
                    perturbation_retries: 0,
                };
                out.push(search.solution(plane, tuple, diag)?);
            }
        }
    }
    Ok(out)
}

struct Search<'a> {
    inst: &'a Instance,
    n: usize,
    sizes: Vec<usize>,
    total: usize,
    halves: Vec<Rational>,
    parallelism: Parallelism,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, parallelism: Parallelism) -> Result<Self> {
        let sizes: Vec<usize> = inst.measures.iter().map(|m| m.len()).collect();
        let count = inst.tuple_count();
        let total = usize::try_from(count)
            .ok()
            .filter(|_| count < u128::MAX)
            .ok_or(Error::CapExceeded {
                what: "tuple count",
                size: count,
                cap: usize::MAX as u128,
            })?;
        let halves = inst.measures.iter().map(|m| m.total().halve()).collect();
        Ok(Search {
            inst,
            n: inst.dim(),
            sizes,
            total,
            halves,
            parallelism,
        })
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.n];
        for i in (0..self.n).rev() {
            tuple[i] = idx % self.sizes[i];
            idx /= self.sizes[i];
        }
        tuple
    }

    fn tuple_points(&self, tuple: &[usize]) -> Vec<&'a Point<Rational>> {
        tuple
            .iter()
            .zip(&self.inst.measures)
            .map(|(&j, m)| &m.atoms()[j].point)
            .collect()
    }

    fn tuple_rank(&self, tuple: &[usize]) -> usize {
        reduce_tuple(&self.tuple_points(tuple))
            .expect("uniform dimension")
            .rank()
    }

    fn all_points(&self) -> impl Iterator<Item = &'a Point<Rational>> + '_ {
        self.inst
            .measures
            .iter()
            .flat_map(|m| m.atoms().iter().map(|a| &a.point))
    }

    /// Early-exit bisect-and-touch check.
    fn passes(&self, plane: &Hyperplane<Rational>) -> bool {
        for (m, half) in self.inst.measures.iter().zip(&self.halves) {
            let (mut plus, mut minus) = (Rational::zero(), Rational::zero());
            let mut touched = false;
            for atom in m.atoms() {
                let r = dot(plane.normal(), atom.point.coords()) - plane.offset();
                if r.is_positive() {
                    plus += &atom.mass;
                    if &plus > half {
                        return false;
                    }
                } else if r.is_negative() {
                    minus += &atom.mass;
                    if &minus > half {
                        return false;
                    }
                } else {
                    touched = true;
                }
            }
            if !touched {
                return false;
            }
        }
        true
    }

    fn first_full_rank(&self) -> Option<(usize, Hyperplane<Rational>)> {
        self.parallelism.find_map_first(self.total, |idx| {
            let pts = self.tuple_points(&self.decode(idx));
            let reduced = reduce_tuple(&pts).ok()?;
            if reduced.rank() + 1 != self.n {
                return None;
            }
            let plane = spanned_plane(&reduced, pts[0]);
            self.passes(&plane).then_some(plane)
        })
    }

    fn first_pencil(&self) -> Option<(usize, Hyperplane<Rational>)> {
        if self.n < 2 {
            return None;
        }
        self.parallelism.find_map_first(self.total, |idx| {
            let pts = self.tuple_points(&self.decode(idx));
            let reduced = reduce_tuple(&pts).ok()?;
            if reduced.rank() + 2 != self.n {
                return None;
            }
            self.pencil(&reduced, pts[0])
                .into_iter()
                .find(|h| self.passes(h))
        })
    }

    fn count_pencils(&self, upto: usize) -> u128 {
        if self.n < 2 {
            return 0;
        }
        let flags = self
            .parallelism
            .map_collect(upto, |idx| self.tuple_rank(&self.decode(idx)) + 2 == self.n);
        flags.into_iter().filter(|&f| f).count() as u128
    }

    /// Passing hyperplanes containing the tuple. With `all = false` stops at the first.
    fn complete(&self, tuple: &[usize], all: bool) -> Vec<Hyperplane<Rational>> {
        let pts = self.tuple_points(tuple);
        let reduced = reduce_tuple(&pts).expect("uniform dimension");
        let rank = reduced.rank();
        let candidates = if rank + 1 == self.n {
            vec![spanned_plane(&reduced, pts[0])]
        } else if rank + 2 == self.n {
            self.pencil(&reduced, pts[0])
        } else {
            self.vertices(&pts)
        };
        let mut passing = candidates.into_iter().filter(|h| self.passes(h));
        if all {
            passing.collect()
        } else {
            passing.next().into_iter().collect()
        }
    }

    /// Hyperplanes of the pencil through an (n−2)-flat: every critical position
    /// where some atom enters the hyperplane, plus one interior representative
    /// per arc between consecutive critical positions, in angular order.
    fn pencil(
        &self,
        reduced: &Reduced<Rational>,
        base: &Point<Rational>,
    ) -> Vec<Hyperplane<Rational>> {
        let basis = reduced.null_space();
        debug_assert_eq!(basis.len(), 2);
        let (w1, w2) = (&basis[0], &basis[1]);

        let mut critical: Vec<[Rational; 2]> = Vec::new();
        for q in self.all_points() {
            let d = q.sub(base);
            let (a, b) = (dot(w1, &d), dot(w2, &d));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            // Normal coordinates (α, β) with α·a + β·b = 0.
            critical.push(upper_half(primitive([-b, a])));
        }
        critical.sort_by(|x, y| cross(y, x).partial_cmp(&Rational::zero()).expect("exact"));
        critical.dedup_by(|x, y| cross(x, y).is_zero());

        let mut dirs: Vec<[Rational; 2]> = Vec::with_capacity(2 * critical.len() + 1);
        match critical.len() {
            0 => dirs.push([Rational::one(), Rational::zero()]),
            1 => {
                let [x, y] = critical[0].clone();
                dirs.push([x.clone(), y.clone()]);
                dirs.push([-y, x]);
            }
            m => {
                for i in 0..m {
                    dirs.push(critical[i].clone());
                    let next = if i + 1 < m {
                        critical[i + 1].clone()
                    } else {
                        [-critical[0][0].clone(), -critical[0][1].clone()]
                    };
                    dirs.push([&critical[i][0] + &next[0], &critical[i][1] + &next[1]]);
                }
            }
        }
        dirs.into_iter()
            .map(|[alpha, beta]| {
                let normal: Vec<Rational> = w1
                    .iter()
                    .zip(w2)
                    .map(|(x, y)| &alpha * x + &beta * y)
                    .collect();
                Hyperplane::through_point(normal, base).expect("pencil normal is nonzero")
            })
            .collect()
    }

    /// Critical positions of a family of dimension ≥ 2: hyperplanes through the
    /// tuple's flat and enough extra atoms to pin them down. If the atoms never
    /// reach full rank, the single flat containing everything is returned.
    fn vertices(&self, tuple: &[&Point<Rational>]) -> Vec<Hyperplane<Rational>> {
        let base = tuple[0];
        let rows: Vec<Vec<Rational>> = tuple[1..].iter().map(|p| p.sub(base)).collect();
        let rank = Reduced::from_rows(rows.clone(), self.n).rank();
        let needed = self.n - 1 - rank;

        let mut pool: Vec<&Point<Rational>> = Vec::new();
        for q in self.all_points() {
            let mut extended = rows.clone();
            extended.push(q.sub(base));
            if Reduced::from_rows(extended, self.n).rank() > rank && !pool.contains(&q) {
                pool.push(q);
            }
        }

        let mut out = Vec::new();
        for combo in Combinations::new(pool.len(), needed) {
            let mut extended = rows.clone();
            extended.extend(combo.iter().map(|&i| pool[i].sub(base)));
            let reduced = Reduced::from_rows(extended, self.n);
            if reduced.rank() + 1 == self.n {
                out.push(spanned_plane(&reduced, base));
            }
        }
        if out.is_empty() {
            let mut all_rows = rows;
            all_rows.extend(pool.iter().map(|q| q.sub(base)));
            let reduced = Reduced::from_rows(all_rows, self.n);
            let normal = reduced.null_space().swap_remove(0);
            out.push(Hyperplane::through_point(normal, base).expect("null vector is nonzero"));
        }
        out
    }

    /// Atom `j` of measure `i` moved by `2^{-t}·(τ, τ², …, τⁿ)` with
    /// `τ = (i·M + j + 1)/(n·M + 1)`, `t = 10·(round + 1)`.
    fn perturbed(&self, round: usize) -> Option<Instance> {
        let widest = self.sizes.iter().copied().max().unwrap_or(1);
        let denom = BigInt::from(self.n * widest + 1);
        let delta = Rational::new(BigInt::one(), BigInt::one() << (10 * (round + 1)));
        let measures = self
            .inst
            .measures
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let atoms = m
                    .atoms()
                    .iter()
                    .enumerate()
                    .map(|(j, a)| {
                        let tau = Rational::new(BigInt::from(i * widest + j + 1), denom.clone());
                        let mut power = Rational::one();
                        let coords = a
                            .point
                            .coords()
                            .iter()
                            .map(|x| {
                                power = &power * &tau;
                                x + &delta * &power
                            })
                            .collect();
                        Atom {
                            point: Point::new(coords),
                            mass: a.mass.clone(),
                        }
                    })
                    .collect();
                AtomicMeasure::new(m.name(), atoms)
            })
            .collect::<Result<Vec<_>>>()
            .ok()?;
        Instance::new(measures).ok()
    }

    fn solution(
        &self,
        plane: Hyperplane<Rational>,
        tuple: Vec<usize>,
        diagnostics: Diagnostics,
    ) -> Result<Solution> {
        let report = evaluate_cut(&self.inst.measures, &plane, 0.0)?;
        debug_assert!(report.passes());
        Ok(Solution {
            hyperplane: plane,
            report,
            witness_tuple: tuple,
            diagnostics,
        })
    }

    /// Full-rank candidate with the smallest worst-case excess over half mass.
    fn nearest_miss(&self) -> String {
        let limit = self.total.min(100_000);
        let mut best: Option<(f64, Hyperplane<Rational>, Vec<usize>)> = None;
        for idx in 0..limit {
            let tuple = self.decode(idx);
            let pts = self.tuple_points(&tuple);
            let Ok(reduced) = reduce_tuple(&pts) else {
                continue;
            };
            if reduced.rank() + 1 != self.n {
                continue;
            }
            let plane = spanned_plane(&reduced, pts[0]);
            let Ok(report) = evaluate_cut(&self.inst.measures, &plane, 0.0) else {
                continue;
            };
            let excess = report
                .measures
                .iter()
                .map(|m| {
                    let worst = if m.masses.plus > m.masses.minus {
                        &m.masses.plus
                    } else {
                        &m.masses.minus
                    };
                    ((worst - m.total.halve()) / &m.total).to_f64()
                })
                .fold(f64::NEG_INFINITY, f64::max);
            if best.as_ref().is_none_or(|(e, _, _)| excess < *e) {
                best = Some((excess, plane, tuple));
            }
        }
        match best {
            Some((excess, plane, tuple)) => {
                format!("plane {plane} through tuple {tuple:?} exceeds half mass by {excess:.3e} of total")
            }
            None => "no full-rank tuple".to_string(),
        }
    }
}

fn spanned_plane(reduced: &Reduced<Rational>, base: &Point<Rational>) -> Hyperplane<Rational> {
    let normal = reduced.null_space().swap_remove(0);
    Hyperplane::through_point(normal, base).expect("null vector is nonzero")
}

fn cross(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Positive multiple with coprime integer entries.
fn primitive(v: [Rational; 2]) -> [Rational; 2] {
    let (w, scale) = Rational::canonical_plane(v.to_vec(), Rational::one());
    let sign = if scale.is_negative() {
        -Rational::one()
    } else {
        Rational::one()
    };
    [&w[0] * &sign, &w[1] * &sign]
}

/// Representative of `±v` with angle in `[0, π)`.
fn upper_half(v: [Rational; 2]) -> [Rational; 2] {
    let [x, y] = v;
    if y.is_negative() || (y.is_zero() && x.is_negative()) {
        [-x, -y]
    } else {
        [x, y]
    }
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Largest atom count whose masses `perturb_masses` will verify exhaustively.
pub const PERTURB_ATOM_CAP: usize = 20;

/// Lower the first smallest atom by `δ = m_min / p` (successive primes `p`)
/// until `δ < ε` and no subset of atoms has the same mass as its complement.
pub fn perturb_masses(
    measure: &AtomicMeasure<Rational>,
    eps: &Rational,
) -> Result<AtomicMeasure<Rational>> {
    perturb_masses_capped(measure, eps, PERTURB_ATOM_CAP)
}

pub fn perturb_masses_capped(
    measure: &AtomicMeasure<Rational>,
    eps: &Rational,
    cap: usize,
) -> Result<AtomicMeasure<Rational>> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    if measure.len() > cap {
        return Err(Error::CapExceeded {
            what: "atom count",
            size: measure.len() as u128,
            cap: cap as u128,
        });
    }
    let masses: Vec<Rational> = measure.atoms().iter().map(|a| a.mass.clone()).collect();
    let (target, smallest) = masses
        .iter()
        .enumerate()
        .fold(None::<(usize, &Rational)>, |best, (i, m)| match best {
            Some((_, b)) if b <= m => best,
            _ => Some((i, m)),
        })
        .expect("measure is nonempty");
    let smallest = smallest.clone();
    for p in primes() {
        let delta = &smallest / Rational::from_integer(BigInt::from(p));
        if &delta >= eps {
            continue;
        }
        let mut candidate = masses.clone();
        candidate[target] = &candidate[target] - &delta;
        if !has_balanced_split(&candidate) {
            return measure.with_masses(candidate);
        }
    }
    unreachable!("only finitely many reductions produce a balanced split")
}

fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// True if some subset of `masses` sums to exactly half the total.
/// Meet in the middle over the two halves of the list.
pub fn has_balanced_split(masses: &[Rational]) -> bool {
    let total = masses.iter().fold(Rational::zero(), |acc, m| acc + m);
    let half = total.halve();
    let (left, right) = masses.split_at(masses.len() / 2);
    let left_sums: HashSet<Rational> = subset_sums(left).into_iter().collect();
    subset_sums(right)
        .into_iter()
        .any(|s| left_sums.contains(&(&half - s)))
}

fn subset_sums(masses: &[Rational]) -> Vec<Rational> {
    let mut sums = vec![Rational::zero()];
    for m in masses {
        let extra: Vec<Rational> = sums.iter().map(|s| s + m).collect();
        sums.extend(extra);
    }
    sums
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(c: &[i64]) -> Point<Rational> {
        Point::new(c.iter().map(|&x| q(x, 1)).collect())
    }

    fn counting(name: &str, pts: &[&[i64]]) -> AtomicMeasure<Rational> {
        AtomicMeasure::counting(name, pts.iter().map(|p| pt(p)).collect()).unwrap()
    }

    fn plane(u: &[i64], c: i64) -> Hyperplane<Rational> {
        Hyperplane::new(u.iter().map(|&x| q(x, 1)).collect(), q(c, 1)).unwrap()
    }

    fn seq() -> SolverConfig {
        SolverConfig {
            parallelism: Parallelism::sequential(),
            ..Default::default()
        }
    }

    #[test]
    fn singletons_force_the_line() {
        let inst =
            Instance::new(vec![counting("A", &[&[0, 0]]), counting("B", &[&[1, 0]])]).unwrap();
        let sol = solve_touching_cut(&inst, &seq()).unwrap();
        assert_eq!(sol.hyperplane, plane(&[0, 1], 0));
        assert_eq!(sol.witness_tuple, vec![0, 0]);
        assert_eq!(sol.diagnostics.phase, SearchPhase::FullRank);
        let all = enumerate_all_cuts(&inst, &seq()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].hyperplane, plane(&[0, 1], 0));
    }

    #[test]
    fn two_triangles_first_cut() {
        // Tuple (0,0) gives x = 0 with both of A's other atoms on one side;
        // tuple (0,1) gives x − 2y = 0, which splits both sets 1/1/1.
        let inst = Instance::new(vec![
            counting("A", &[&[0, 0], &[2, 0], &[1, 3]]),
            counting("B", &[&[0, 1], &[2, 1], &[1, -2]]),
        ])
        .unwrap();
        let sol = solve_touching_cut(&inst, &seq()).unwrap();
        assert_eq!(sol.hyperplane, plane(&[1, -2], 0));
        assert_eq!(sol.witness_tuple, vec![0, 1]);
        assert_eq!(sol.diagnostics.candidates_examined, 2);
        let all = enumerate_all_cuts(&inst, &seq()).unwrap();
        assert!(all.iter().any(|s| s.hyperplane == sol.hyperplane));
        assert!(all.iter().all(|s| s.report.passes()));
    }

    #[test]
    fn shared_atom_uses_pencil() {
        let inst =
            Instance::new(vec![counting("A", &[&[0, 0]]), counting("B", &[&[0, 0]])]).unwrap();
        let sol = solve_touching_cut(&inst, &seq()).unwrap();
        assert_eq!(sol.diagnostics.phase, SearchPhase::PencilSweep);
        assert_eq!(sol.diagnostics.completions_used, 1);
        assert_eq!(*sol.hyperplane.offset(), q(0, 1));
        let all = enumerate_all_cuts(&inst, &seq()).unwrap();
        assert!(!all.is_empty());
        assert!(all
            .iter()
            .all(|s| s.report.passes() && s.hyperplane.offset().is_zero()));
    }

    #[test]
    fn pencil_resolves_collinear_witnesses() {
        // Every full-rank line through an A atom and a B atom misses the
        // balance; the coincident pair at the origin must be swept.
        let inst = Instance::new(vec![
            counting("A", &[&[0, 0], &[4, 1], &[-4, -1]]),
            counting("B", &[&[0, 0], &[1, 4], &[-1, -4]]),
        ])
        .unwrap();
        let sol = solve_touching_cut(&inst, &seq()).unwrap();
        assert!(sol.report.passes());
        let all = enumerate_all_cuts(&inst, &seq()).unwrap();
        assert!(all.iter().any(|s| s.hyperplane == sol.hyperplane));
    }

    #[test]
    fn three_sets_sharing_a_point_in_space() {
        // Each set is a pair symmetric through the origin plus the origin
        // itself, so the only touching tuples meet at the shared point.
        let inst = Instance::new(vec![
            counting("A", &[&[0, 0, 0], &[5, 1, 2], &[-5, -1, -2]]),
            counting("B", &[&[0, 0, 0], &[1, 7, -3], &[-1, -7, 3]]),
            counting("C", &[&[0, 0, 0], &[2, -3, 11], &[-2, 3, -11]]),
        ])
        .unwrap();
        let sol = solve_touching_cut(&inst, &seq()).unwrap();
        assert!(sol.report.passes());
        for (m, &j) in inst.measures().iter().zip(&sol.witness_tuple) {
            assert!(sol
                .hyperplane
                .residual(&m.atoms()[j].point)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn coincident_singletons_need_perturbation() {
        // The only tuple has a zero-dimensional hull: no full-rank plane and no
        // pencil exist, so the displaced instance supplies the tuple.
        let inst = Instance::new(vec![
            counting("A", &[&[1, 2, 3]]),
            counting("B", &[&[1, 2, 3]]),
            counting("C", &[&[1, 2, 3]]),
        ])
        .unwrap();
        let sol = solve_touching_cut(&inst, &seq()).unwrap();
        assert_eq!(sol.diagnostics.phase, SearchPhase::Perturbation);
        assert_eq!(sol.diagnostics.perturbation_retries, 1);
        assert_eq!(sol.witness_tuple, vec![0, 0, 0]);
        assert!(sol.report.passes());
        let all = enumerate_all_cuts(&inst, &seq()).unwrap();
        assert!(all.iter().any(|s| s.hyperplane == sol.hyperplane));
        assert!(all
            .iter()
            .all(|s| s.diagnostics.phase == SearchPhase::VertexCompletion));
    }

    #[test]
    fn retry_limit_reports_nearest_miss() {
        let inst = Instance::new(vec![
            counting("A", &[&[1, 2, 3]]),
            counting("B", &[&[1, 2, 3]]),
            counting("C", &[&[1, 2, 3]]),
        ])
        .unwrap();
        let cfg = SolverConfig {
            perturbation_rounds: 0,
            ..seq()
        };
        assert!(matches!(
            solve_touching_cut(&inst, &cfg),
            Err(Error::RetryLimit { retries: 0, .. })
        ));
    }

    #[test]
    fn instance_validation() {
        let a = counting("A", &[&[0, 0]]);
        assert!(matches!(
            Instance::new(vec![a.clone()]),
            Err(Error::InvalidInstance(_))
        ));
        let b3 = counting("B", &[&[0, 0, 0]]);
        assert!(Instance::new(vec![a, b3]).is_err());
        assert!(Instance::new(vec![]).is_err());
    }

    #[test]
    fn enumerate_cap() {
        let inst = Instance::new(vec![
            counting("A", &[&[0, 0], &[1, 1]]),
            counting("B", &[&[3, 0], &[1, 5]]),
        ])
        .unwrap();
        let cfg = SolverConfig {
            enumerate_cap: 3,
            ..seq()
        };
        assert!(matches!(
            enumerate_all_cuts(&inst, &cfg),
            Err(Error::CapExceeded { .. })
        ));
    }

    fn masses(name: &str, ms: &[Rational]) -> AtomicMeasure<Rational> {
        let atoms = ms
            .iter()
            .enumerate()
            .map(|(i, m)| Atom {
                point: pt(&[i as i64]),
                mass: m.clone(),
            })
            .collect();
        AtomicMeasure::new(name, atoms).unwrap()
    }

    fn mass_list(m: &AtomicMeasure<Rational>) -> Vec<Rational> {
        m.atoms().iter().map(|a| a.mass.clone()).collect()
    }

    #[test]
    fn perturb_two_equal_masses() {
        let out = perturb_masses(&masses("m", &[q(1, 1), q(1, 1)]), &q(1, 2)).unwrap();
        assert_eq!(mass_list(&out), vec![q(2, 3), q(1, 1)]);
    }

    #[test]
    fn perturb_singleton() {
        let out = perturb_masses(&masses("m", &[q(1, 1)]), &q(1, 2)).unwrap();
        assert_eq!(mass_list(&out), vec![q(2, 3)]);
    }

    #[test]
    fn perturb_breaks_one_plus_two_equals_three() {
        // Bad reductions of the first atom are ±(sum(S) − sum(complement)) over
        // subsets S; the smallest prime p with 1/p < 1/4 avoiding them is 5.
        let ms = [q(1, 1), q(2, 1), q(3, 1)];
        assert!(has_balanced_split(&ms));
        let mut bad = HashSet::new();
        for mask in 0u32..8 {
            let (mut inside, mut outside) = (q(0, 1), q(0, 1));
            for (i, m) in ms.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    inside += m;
                } else {
                    outside += m;
                }
            }
            bad.insert(&inside - &outside);
            bad.insert(&outside - &inside);
        }
        let expected = [2i64, 3, 5, 7, 11]
            .iter()
            .map(|&p| q(1, p))
            .find(|d| d < &q(1, 4) && !bad.contains(d))
            .unwrap();
        assert_eq!(expected, q(1, 5));
        let out = perturb_masses(&masses("m", &ms), &q(1, 4)).unwrap();
        assert_eq!(mass_list(&out), vec![q(4, 5), q(2, 1), q(3, 1)]);
    }

    #[test]
    fn perturb_errors() {
        let m = masses("m", &[q(1, 1)]);
        assert_eq!(perturb_masses(&m, &q(0, 1)), Err(Error::NonPositiveEpsilon));
        let big = masses("big", &vec![q(1, 1); 21]);
        assert!(matches!(
            perturb_masses(&big, &q(1, 2)),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}
