//! Counting equivalence classes of pair states.
//!
//! Three independent routes to the same number:
//!
//! * [`OrbitEngine::count_orbits_bfs`] sweeps states in index order and runs a
//!   breadth-first closure under the `S` and `T` moves from every unvisited
//!   state. Works for any [`GroupSpec`].
//! * [`OrbitEngine::count_orbits_canonical`] counts states that are the
//!   minimum of their `SL(2, Z_p)` image set. Constant memory.
//! * [`OrbitEngine::count_orbits_burnside`] averages fixed-point counts over
//!   the group without touching individual states.

use std::collections::{BTreeSet, VecDeque};
use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::residue::{
    apply_mat, apply_s, apply_t, enumerate_sl2, is_prime, sl2_order, GroupSpec, Mat2, PairState,
    StateCodec,
};

/// Default cap on the number of pair states an enumerative method may visit.
pub const DEFAULT_STATE_BUDGET: u64 = 1 << 28;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Bfs,
    Canonical,
    Burnside,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bfs => "bfs",
            Method::Canonical => "canonical",
            Method::Burnside => "burnside",
        }
    }
}

/// One equivalence class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    /// Minimal member under the index order.
    pub representative: PairState,
    pub size: BigInt,
    /// `p(p^2 - 1) / size`; only known when the group is `Z_p^n`.
    pub stabilizer_order: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub spec: GroupSpec,
    pub method: Method,
    pub orbit_count: BigInt,
    pub summaries: Option<Vec<OrbitSummary>>,
}

/// Breadth-first closure of `{s}` under the `S` and `T` moves.
pub fn orbit_of(s: &PairState) -> BTreeSet<PairState> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s.clone());
    queue.push_back(s.clone());
    while let Some(x) = queue.pop_front() {
        for y in [apply_s(&x), apply_t(&x)] {
            if !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `Some(p)` for `Z_p^n` with `n >= 1`, `None` for the trivial group.
fn uniform_prime(spec: &GroupSpec) -> Result<Option<u64>> {
    if spec.n() == 0 {
        return Ok(None);
    }
    match spec.common_modulus() {
        Some(p) if is_prime(p) => Ok(Some(p)),
        Some(d) if spec.moduli().iter().all(|&x| x == d) => Err(Error::NotPrime(d)),
        _ => Err(Error::NotUniformPrime(spec.moduli().to_vec())),
    }
}

/// The smallest state in the `SL(2, Z_p)` orbit of `s`.
pub fn canonical_form(s: &PairState) -> Result<PairState> {
    let Some(p) = uniform_prime(s.spec())? else {
        return Ok(s.clone());
    };
    let mut best = s.clone();
    for m in enumerate_sl2(p)? {
        let image = apply_mat(s, &m)?;
        if image < best {
            best = image;
        }
    }
    Ok(best)
}

/// Index-level canonicalization for one `Z_p^n`.
#[derive(Clone, Debug)]
pub struct Canonicalizer {
    codec: StateCodec,
    group: Vec<Mat2>,
}

impl Canonicalizer {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let group = match uniform_prime(spec)? {
            Some(p) => enumerate_sl2(p)?,
            None => Vec::new(),
        };
        Ok(Canonicalizer {
            codec: StateCodec::new(spec)?,
            group,
        })
    }

    pub fn codec(&self) -> &StateCodec {
        &self.codec
    }

    pub fn canonical_index(&self, i: u64) -> u64 {
        let mut mover = self.codec.mover();
        self.group.iter().map(|m| mover.mat(i, m)).fold(i, u64::min)
    }

    /// Number of indices in `range` that are their own canonical form.
    /// Disjoint ranges add up to the orbit count.
    pub fn count_canonical_in_range(&self, range: Range<u64>) -> u64 {
        let mut mover = self.codec.mover();
        let mut count = 0;
        for i in range {
            if self.group.iter().all(|m| mover.mat(i, m) >= i) {
                count += 1;
            }
        }
        count
    }
}

/// Fixed-point total `sum_A p^(n * dim ker(A - I))` over a subset of the group.
/// Disjoint subsets add up.
pub fn burnside_fixed_point_total(p: u64, n: usize, mats: &[Mat2]) -> BigInt {
    let mut by_dim = [0u64; 3];
    for m in mats {
        by_dim[m.fixed_row_dim() as usize] += 1;
    }
    let pn = BigInt::from(p).pow(n as u32);
    by_dim
        .iter()
        .enumerate()
        .map(|(dim, &count)| BigInt::from(count) * pn.pow(dim as u32))
        .sum()
}

#[derive(Clone, Debug)]
pub struct OrbitEngine {
    budget: u64,
}

impl Default for OrbitEngine {
    fn default() -> Self {
        OrbitEngine {
            budget: DEFAULT_STATE_BUDGET,
        }
    }
}

impl OrbitEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        OrbitEngine { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Fails unless the state space fits the budget.
    pub fn check_budget(&self, spec: &GroupSpec, what: &'static str) -> Result<()> {
        let required = spec.state_count();
        if required > BigUint::from(self.budget) {
            return Err(Error::BudgetExceeded {
                what,
                required: required.to_string(),
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn codec(&self, spec: &GroupSpec, what: &'static str) -> Result<StateCodec> {
        self.check_budget(spec, what)?;
        let codec = StateCodec::new(spec)?;
        if usize::try_from(codec.state_count()).is_err() {
            return Err(Error::IndexOverflow(codec.state_count().to_string()));
        }
        Ok(codec)
    }

    /// Visited sweep: every unvisited index opens one orbit, whose smallest
    /// member is that index.
    fn sweep(&self, codec: &StateCodec, mut on_orbit: impl FnMut(u64, u64)) {
        let count = codec.state_count();
        let mut visited = vec![0u64; count.div_ceil(64) as usize];
        let mark = |v: &mut [u64], i: u64| -> bool {
            let (w, b) = ((i / 64) as usize, i % 64);
            let fresh = v[w] >> b & 1 == 0;
            v[w] |= 1 << b;
            fresh
        };
        let mut mover = codec.mover();
        let mut queue = VecDeque::new();
        for start in 0..count {
            if !mark(&mut visited, start) {
                continue;
            }
            let mut size = 1u64;
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                for j in [mover.s(i), mover.t(i)] {
                    if mark(&mut visited, j) {
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            on_orbit(start, size);
        }
    }

    pub fn count_orbits_bfs(&self, spec: &GroupSpec) -> Result<CensusReport> {
        let codec = self.codec(spec, "breadth-first orbit sweep")?;
        let mut orbits = 0u64;
        self.sweep(&codec, |_, _| orbits += 1);
        Ok(CensusReport {
            spec: spec.clone(),
            method: Method::Bfs,
            orbit_count: BigInt::from(orbits),
            summaries: None,
        })
    }

    pub fn count_orbits_canonical(&self, spec: &GroupSpec) -> Result<CensusReport> {
        uniform_prime(spec)?;
        let codec = self.codec(spec, "canonical-form count")?;
        let canon = Canonicalizer::new(spec)?;
        let total = codec.state_count();
        let orbits: u64 = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| canon.count_canonical_in_range(c * CHUNK..((c + 1) * CHUNK).min(total)))
            .sum();
        Ok(CensusReport {
            spec: spec.clone(),
            method: Method::Canonical,
            orbit_count: BigInt::from(orbits),
            summaries: None,
        })
    }

    /// Orbit count by averaging fixed points over `SL(2, Z_p)`. Independent of
    /// the state budget since no state is enumerated.
    pub fn count_orbits_burnside(&self, spec: &GroupSpec) -> Result<CensusReport> {
        let orbit_count = match uniform_prime(spec)? {
            None => BigInt::one(),
            Some(p) => {
                let group = enumerate_sl2(p)?;
                let total = burnside_fixed_point_total(p, spec.n(), &group);
                crate::closed_forms::exact_div(&total, &BigInt::from(group.len()))?
            }
        };
        Ok(CensusReport {
            spec: spec.clone(),
            method: Method::Burnside,
            orbit_count,
            summaries: None,
        })
    }

    pub fn census(&self, spec: &GroupSpec, method: Method) -> Result<CensusReport> {
        match method {
            Method::Bfs => self.count_orbits_bfs(spec),
            Method::Canonical => self.count_orbits_canonical(spec),
            Method::Burnside => self.count_orbits_burnside(spec),
        }
    }

    /// One summary per orbit, sorted by representative. Stabilizer orders are
    /// filled in when the group is `Z_p^n` with `n >= 1`.
    pub fn orbit_summaries(&self, spec: &GroupSpec) -> Result<Vec<OrbitSummary>> {
        let prime = spec.common_modulus().filter(|&p| is_prime(p));
        self.summaries(spec, prime)
    }

    /// Summaries for `Z_p^n`, including `n = 0` where the single orbit has
    /// the whole group as stabilizer.
    pub fn orbit_summaries_zp(&self, p: u64, n: usize) -> Result<Vec<OrbitSummary>> {
        let spec = GroupSpec::uniform_prime(p, n)?;
        self.summaries(&spec, Some(p))
    }

    fn summaries(&self, spec: &GroupSpec, prime: Option<u64>) -> Result<Vec<OrbitSummary>> {
        let codec = self.codec(spec, "orbit summaries")?;
        let group_order = prime.map(|p| BigInt::from(sl2_order(p)));
        let mut raw = Vec::new();
        self.sweep(&codec, |rep, size| raw.push((rep, size)));
        raw.into_iter()
            .map(|(rep, size)| {
                let size = BigInt::from(size);
                let stabilizer_order = group_order
                    .as_ref()
                    .map(|order| crate::closed_forms::exact_div(order, &size))
                    .transpose()?;
                Ok(OrbitSummary {
                    representative: codec.state(rep)?,
                    size,
                    stabilizer_order,
                })
            })
            .collect()
    }

    /// Census with summaries attached.
    pub fn census_with_summaries(&self, spec: &GroupSpec) -> Result<CensusReport> {
        let summaries = self.orbit_summaries(spec)?;
        Ok(CensusReport {
            spec: spec.clone(),
            method: Method::Bfs,
            orbit_count: BigInt::from(summaries.len()),
            summaries: Some(summaries),
        })
    }
}

impl CensusReport {
    /// Checks the internal bookkeeping of a report with summaries.
    pub fn is_consistent(&self) -> bool {
        match &self.summaries {
            None => true,
            Some(list) => {
                let total: BigInt = list.iter().map(|s| &s.size).sum();
                BigInt::from(list.len()) == self.orbit_count
                    && BigInt::from(self.spec.state_count()) == total
                    && list.iter().all(|s| s.size > BigInt::zero())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::state_from_index;

    fn zp(p: u64, n: usize) -> GroupSpec {
        GroupSpec::uniform(p, n).unwrap()
    }

    fn count(report: Result<CensusReport>) -> BigInt {
        report.unwrap().orbit_count
    }

    #[test]
    fn orbit_of_examples() {
        let z1 = zp(2, 1);
        assert_eq!(orbit_of(&PairState::zero(&z1)).len(), 1);
        let s = PairState::new(&z1, vec![0], vec![1]).unwrap();
        let orbit = orbit_of(&s);
        assert_eq!(orbit.len(), 3);
        assert!(orbit.contains(&PairState::new(&z1, vec![1], vec![1]).unwrap()));

        let z2 = zp(2, 2);
        let id = PairState::from_rows(&z2, &[(1, 0), (0, 1)]).unwrap();
        let orbit = orbit_of(&id);
        assert_eq!(orbit.len(), 6);
        // the five members displayed for the invertible class, plus the identity
        for rows in [
            [(0, 1), (1, 1)],
            [(1, 1), (1, 0)],
            [(1, 0), (1, 1)],
            [(1, 1), (0, 1)],
            [(0, 1), (1, 0)],
            [(1, 0), (0, 1)],
        ] {
            assert!(orbit.contains(&PairState::from_rows(&z2, &rows).unwrap()));
        }
    }

    #[test]
    fn bfs_examples() {
        let engine = OrbitEngine::new();
        assert_eq!(count(engine.count_orbits_bfs(&zp(2, 1))), 2.into());
        assert_eq!(count(engine.count_orbits_bfs(&zp(2, 2))), 5.into());
        assert_eq!(count(engine.count_orbits_bfs(&zp(3, 2))), 7.into());
        assert_eq!(count(engine.count_orbits_bfs(&zp(5, 0))), 1.into());
    }

    #[test]
    fn bfs_handles_composite_and_mixed_moduli() {
        let engine = OrbitEngine::new();
        // Z_4: orbits of SL(2, Z_4) on (Z_4)^2 are classified by the gcd of
        // the entries with 4, giving {0}, order-2 vectors, order-4 vectors.
        assert_eq!(count(engine.count_orbits_bfs(&zp(4, 1))), 3.into());
        // Z_6 = Z_2 x Z_3 splits into a product of the two actions: 2 * 2.
        assert_eq!(count(engine.count_orbits_bfs(&zp(6, 1))), 4.into());
        let mixed = GroupSpec::new(vec![2, 3]).unwrap();
        assert_eq!(count(engine.count_orbits_bfs(&mixed)), 4.into());
        assert!(matches!(
            engine.count_orbits_canonical(&mixed),
            Err(Error::NotUniformPrime(_))
        ));
        assert_eq!(
            engine.count_orbits_burnside(&zp(4, 1)),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn budget_is_enforced() {
        let engine = OrbitEngine::with_budget(100);
        assert!(engine.count_orbits_bfs(&zp(3, 2)).is_ok());
        let err = engine.count_orbits_bfs(&zp(2, 4)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 100, .. }));
        assert!(err.to_string().contains("100"));
        assert!(engine.count_orbits_canonical(&zp(2, 4)).is_err());
        assert!(engine.orbit_summaries(&zp(2, 4)).is_err());
        // burnside never enumerates states
        assert_eq!(count(engine.count_orbits_burnside(&zp(2, 20))), {
            let n = BigInt::from(2).pow(20);
            (&n + 1) * (&n / 2 + 1) / 3
        });
    }

    #[test]
    fn canonical_examples() {
        let z1 = zp(2, 1);
        assert_eq!(
            canonical_form(&PairState::zero(&z1)).unwrap(),
            PairState::zero(&z1)
        );
        let s = PairState::new(&z1, vec![1], vec![1]).unwrap();
        let expected = orbit_of(&s).into_iter().next().unwrap();
        assert_eq!(expected, PairState::new(&z1, vec![0], vec![1]).unwrap());
        assert_eq!(canonical_form(&s).unwrap(), expected);

        let z2 = zp(2, 2);
        for i in 0..16 {
            let s = state_from_index(i, &z2).unwrap();
            let c = canonical_form(&s).unwrap();
            assert_eq!(canonical_form(&c).unwrap(), c);
        }
        let bad = GroupSpec::uniform(4, 1).unwrap();
        assert_eq!(
            canonical_form(&PairState::zero(&bad)),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn canonical_is_orbit_minimum() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let spec = zp(p, n);
            let canon = Canonicalizer::new(&spec).unwrap();
            for i in 0..canon.codec().state_count() {
                let s = state_from_index(i, &spec).unwrap();
                let orbit = orbit_of(&s);
                let min = orbit.iter().next().unwrap();
                assert_eq!(&canonical_form(&s).unwrap(), min);
                assert_eq!(canon.canonical_index(i), canon.codec().index(min));
            }
        }
    }

    #[test]
    fn canonical_count_examples() {
        let engine = OrbitEngine::new();
        assert_eq!(count(engine.count_orbits_canonical(&zp(2, 2))), 5.into());
        assert_eq!(count(engine.count_orbits_canonical(&zp(2, 0))), 1.into());
        assert_eq!(
            count(engine.count_orbits_canonical(&zp(5, 2))),
            count(engine.count_orbits_bfs(&zp(5, 2)))
        );
    }

    #[test]
    fn canonical_ranges_partition() {
        let spec = zp(3, 3);
        let canon = Canonicalizer::new(&spec).unwrap();
        let whole = canon.count_canonical_in_range(0..729);
        let split = canon.count_canonical_in_range(0..100)
            + canon.count_canonical_in_range(100..500)
            + canon.count_canonical_in_range(500..729);
        assert_eq!(whole, split);
        assert_eq!(whole, 40);
    }

    #[test]
    fn burnside_examples() {
        let engine = OrbitEngine::new();
        assert_eq!(count(engine.count_orbits_burnside(&zp(2, 1))), 2.into());
        assert_eq!(count(engine.count_orbits_burnside(&zp(2, 6))), 715.into());
        assert_eq!(count(engine.count_orbits_burnside(&zp(3, 3))), 40.into());
        assert_eq!(count(engine.count_orbits_bfs(&zp(3, 3))), 40.into());
    }

    #[test]
    fn burnside_subsets_add_up() {
        let group = enumerate_sl2(5).unwrap();
        let (left, right) = group.split_at(37);
        assert_eq!(
            burnside_fixed_point_total(5, 3, &group),
            burnside_fixed_point_total(5, 3, left) + burnside_fixed_point_total(5, 3, right)
        );
    }

    #[test]
    fn summary_examples() {
        let engine = OrbitEngine::new();
        let sizes = |p, n| -> Vec<BigInt> {
            let mut v: Vec<BigInt> = engine
                .orbit_summaries(&zp(p, n))
                .unwrap()
                .into_iter()
                .map(|s| s.size)
                .collect();
            v.sort();
            v
        };
        assert_eq!(sizes(2, 1), vec![1.into(), 3.into()]);
        assert_eq!(sizes(2, 2), [1, 3, 3, 3, 6].map(BigInt::from).to_vec());
        let free: Vec<OrbitSummary> = engine
            .orbit_summaries(&zp(2, 2))
            .unwrap()
            .into_iter()
            .filter(|s| s.stabilizer_order == Some(BigInt::one()))
            .collect();
        assert_eq!(free.len(), 1);
        assert_eq!(free[0].size, 6.into());
    }

    #[test]
    fn summaries_are_sorted_and_consistent() {
        let engine = OrbitEngine::new();
        for (p, n) in [(2, 3), (3, 2), (5, 1)] {
            let report = engine.census_with_summaries(&zp(p, n)).unwrap();
            assert!(report.is_consistent());
            let list = report.summaries.unwrap();
            assert!(list
                .windows(2)
                .all(|w| w[0].representative < w[1].representative));
            for s in &list {
                let stab = s.stabilizer_order.clone().unwrap();
                assert_eq!(stab * &s.size, BigInt::from(sl2_order(p)));
                assert_eq!(canonical_form(&s.representative).unwrap(), s.representative);
            }
        }
        let trivial = engine.orbit_summaries_zp(3, 0).unwrap();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].stabilizer_order, Some(24.into()));
        let composite = engine.orbit_summaries(&zp(4, 1)).unwrap();
        assert!(composite.iter().all(|s| s.stabilizer_order.is_none()));
    }

    #[test]
    fn census_is_deterministic() {
        let engine = OrbitEngine::new();
        let spec = zp(3, 2);
        assert_eq!(
            engine.census_with_summaries(&spec).unwrap(),
            engine.census_with_summaries(&spec).unwrap()
        );
        for method in [Method::Bfs, Method::Canonical, Method::Burnside] {
            assert_eq!(
                engine.census(&spec, method).unwrap(),
                engine.census(&spec, method).unwrap()
            );
        }
    }
}
