//! Greedy construction and simulated annealing of compatible subsets.
//!
//! Both searches keep, for every minimal vector, the number of current
//! members it conflicts with (scaled dot above 8). A vector is addable when
//! that count is zero and it is not a member; the addable vectors are held in
//! an indexable set so a uniform feasible insertion costs `O(1)` to draw.
//! Conflict lists are computed by a full scan and cached per run.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{is_antipodal, is_compatible, Configuration};
use crate::error::{Error, Result};
use crate::leech::{MinimalVectorSet, DIM};

/// Cooling schedule. Every variant reaches 0 at `t_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Schedule {
    /// `T0 · (1 - t/t_max)`
    Linear,
    /// `T0 · (1 - t/t_max)^p`, `p > 0`
    Power(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    pub t_max: u64,
    pub t0: f64,
    pub schedule: Schedule,
    pub seed: u64,
    /// Insert and remove `{v, -v}` together.
    pub antipodal_moves: bool,
    /// Stop as soon as the best size reaches this value.
    pub target_size: Option<usize>,
    /// Maximum number of cached conflict lists (about 18 KiB each).
    pub cache_capacity: usize,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            t_max: 10_000_000,
            t0: 2.0,
            schedule: Schedule::Linear,
            seed: 0,
            antipodal_moves: false,
            target_size: None,
            cache_capacity: 16_384,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<()> {
        if self.t_max < 1 {
            return Err(Error::InvalidParams("t_max must be at least 1".into()));
        }
        if !(self.t0 > 0.0) || !self.t0.is_finite() {
            return Err(Error::InvalidParams(format!("T0 must be positive, got {}", self.t0)));
        }
        if let Schedule::Power(p) = self.schedule {
            if !(p > 0.0) {
                return Err(Error::InvalidParams(format!("schedule exponent must be positive, got {p}")));
            }
        }
        Ok(())
    }
}

/// Temperature at iteration `t` (`0 ≤ t ≤ t_max`).
pub fn temp(t: u64, params: &AnnealParams) -> f64 {
    let t = t.min(params.t_max);
    let frac = 1.0 - t as f64 / params.t_max as f64;
    match params.schedule {
        Schedule::Linear => params.t0 * frac,
        Schedule::Power(p) => params.t0 * frac.powf(p),
    }
}

/// What an energy function may look at.
#[derive(Clone, Copy, Debug)]
pub struct StateView {
    pub size: usize,
    /// Number of vectors that could currently be inserted.
    pub addable: usize,
}

pub trait Energy: Sync {
    fn energy(&self, state: &StateView) -> f64;
}

/// `energy(S) = -|S|`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NegativeSize;

impl Energy for NegativeSize {
    fn energy(&self, state: &StateView) -> f64 {
        -(state.size as f64)
    }
}

/// `-|S| - weight · addable / 196560`: prefers states that keep more
/// insertions open.
#[derive(Clone, Copy, Debug)]
pub struct SizeWithSlack {
    pub weight: f64,
}

impl Energy for SizeWithSlack {
    fn energy(&self, state: &StateView) -> f64 {
        -(state.size as f64) - self.weight * state.addable as f64 / crate::leech::KISSING_24 as f64
    }
}

pub fn energy(s: &Configuration) -> f64 {
    -(s.len() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best: Configuration,
    /// `(iteration, best size)` at every improvement; the best size is
    /// constant between consecutive entries. Iteration 0 is the start.
    pub history: Vec<(u64, usize)>,
    pub seed: u64,
    pub iterations: u64,
    pub final_size: usize,
}

impl SearchResult {
    /// Best size seen after iteration `t`.
    pub fn best_size_at(&self, t: u64) -> usize {
        match self.history.partition_point(|&(it, _)| it <= t) {
            0 => 0,
            k => self.history[k - 1].1,
        }
    }

    /// At most `points` evenly spaced samples of the best-size trace.
    pub fn history_downsampled(&self, points: usize) -> Vec<(u64, usize)> {
        let points = points.max(2) as u64;
        (0..points)
            .map(|k| {
                let t = self.iterations * k / (points - 1);
                (t, self.best_size_at(t))
            })
            .collect()
    }
}

/// Conflict lists with bounded FIFO eviction.
struct ConflictCache {
    lists: HashMap<u32, Arc<[u32]>>,
    order: VecDeque<u32>,
    capacity: usize,
}

impl ConflictCache {
    fn new(capacity: usize) -> Self {
        ConflictCache {
            lists: HashMap::new(),
            order: VecDeque::new(),
            capacity: capacity.max(1),
        }
    }

    fn get(&mut self, v: u32, set: &MinimalVectorSet) -> Arc<[u32]> {
        if let Some(l) = self.lists.get(&v) {
            return l.clone();
        }
        let neg = set.negation(v);
        let list: Arc<[u32]> = match self.lists.get(&neg) {
            // conflicts of -v are the negations of the conflicts of v
            Some(l) => l.iter().map(|&u| set.negation(u)).collect(),
            None => set.conflicts_of(v).into(),
        };
        if self.lists.len() >= self.capacity {
            if let Some(old) = self.order.pop_front() {
                self.lists.remove(&old);
            }
        }
        self.lists.insert(v, list.clone());
        self.order.push_back(v);
        list
    }
}

const ABSENT: u32 = u32::MAX;

/// Indexable subset of `0..n` with O(1) insert, remove and uniform draw.
struct IndexSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

impl IndexSet {
    fn new(n: usize) -> Self {
        IndexSet {
            items: Vec::new(),
            pos: vec![ABSENT; n],
        }
    }

    fn full(n: usize) -> Self {
        IndexSet {
            items: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
        }
    }

    fn contains(&self, v: u32) -> bool {
        self.pos[v as usize] != ABSENT
    }

    fn insert(&mut self, v: u32) {
        if !self.contains(v) {
            self.pos[v as usize] = self.items.len() as u32;
            self.items.push(v);
        }
    }

    fn remove(&mut self, v: u32) {
        let p = self.pos[v as usize];
        if p == ABSENT {
            return;
        }
        let last = self.items.pop().unwrap();
        if last != v {
            self.items[p as usize] = last;
            self.pos[last as usize] = p;
        }
        self.pos[v as usize] = ABSENT;
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn pick(&self, rng: &mut impl Rng) -> Option<u32> {
        if self.items.is_empty() {
            None
        } else {
            Some(self.items[rng.gen_range(0..self.items.len())])
        }
    }
}

/// Incrementally maintained compatible set.
struct SearchState<'a> {
    set: &'a MinimalVectorSet,
    members: IndexSet,
    addable: IndexSet,
    conflicts: Vec<u16>,
    cache: ConflictCache,
}

impl<'a> SearchState<'a> {
    fn new(set: &'a MinimalVectorSet, cache_capacity: usize) -> Self {
        SearchState {
            set,
            members: IndexSet::new(set.len()),
            addable: IndexSet::full(set.len()),
            conflicts: vec![0; set.len()],
            cache: ConflictCache::new(cache_capacity),
        }
    }

    fn view(&self) -> StateView {
        StateView {
            size: self.members.len(),
            addable: self.addable.len(),
        }
    }

    fn insert(&mut self, v: u32) {
        debug_assert!(self.addable.contains(v), "inserting a non-addable vector breaks compatibility");
        self.members.insert(v);
        self.addable.remove(v);
        for &u in self.cache.get(v, self.set).iter() {
            if u == v {
                continue;
            }
            let c = &mut self.conflicts[u as usize];
            *c += 1;
            if *c == 1 {
                self.addable.remove(u);
            }
        }
    }

    fn remove(&mut self, v: u32) {
        debug_assert!(self.members.contains(v));
        self.members.remove(v);
        for &u in self.cache.get(v, self.set).iter() {
            if u == v {
                continue;
            }
            let c = &mut self.conflicts[u as usize];
            *c -= 1;
            if *c == 0 && !self.members.contains(u) {
                self.addable.insert(u);
            }
        }
        if self.conflicts[v as usize] == 0 {
            self.addable.insert(v);
        }
    }

    fn configuration(&self, antipodal: bool) -> Configuration {
        Configuration::new(self.members.items.clone(), antipodal)
    }
}

/// Scans `order` once, keeping every vector compatible with those kept so
/// far. With `antipodal`, a kept vector brings its negation along.
pub fn greedy_build_with(order: &[u32], set: &MinimalVectorSet, antipodal: bool) -> Configuration {
    let mut blocked = vec![false; set.len()];
    let mut members = Vec::new();
    let block = |v: u32, blocked: &mut Vec<bool>| {
        for u in set.conflicts_of(v) {
            blocked[u as usize] = true;
        }
    };
    for &v in order {
        if blocked[v as usize] {
            continue;
        }
        members.push(v);
        block(v, &mut blocked);
        if antipodal {
            let n = set.negation(v);
            debug_assert!(!blocked[n as usize] || members.contains(&n));
            members.push(n);
            block(n, &mut blocked);
        }
    }
    Configuration::new(members, antipodal)
}

/// Greedy construction over `order`.
pub fn greedy_build(order: &[u32], set: &MinimalVectorSet) -> Configuration {
    greedy_build_with(order, set, false)
}

pub fn canonical_order(set: &MinimalVectorSet) -> Vec<u32> {
    (0..set.len() as u32).collect()
}

/// Order by the key `k_i = −8|x_i| + sign(x_i)` where `x_i = signs[i] · v[perm[i]]`,
/// compared lexicographically: vectors with large entries early in the
/// relabelled coordinates come first.
pub fn magnitude_order(set: &MinimalVectorSet, perm: &[usize; DIM], signs: &[i8; DIM]) -> Vec<u32> {
    let mut order = canonical_order(set);
    order.sort_by_cached_key(|&i| {
        let v = set.get(i);
        let key: [i8; DIM] = std::array::from_fn(|k| {
            let x = v.0[perm[k]] * signs[k];
            -8 * x.abs() + x.signum()
        });
        key
    });
    order
}

/// A signed relabelling for which [`magnitude_order`] followed by the
/// antipodal greedy pass gives 408 vectors.
pub const GOOD_RELABELLING: ([usize; DIM], [i8; DIM]) = (
    [14, 6, 7, 15, 18, 3, 8, 10, 17, 11, 23, 1, 20, 4, 12, 21, 19, 13, 9, 16, 0, 22, 5, 2],
    [1, -1, -1, -1, -1, -1, -1, 1, -1, -1, 1, -1, -1, 1, 1, -1, 1, 1, -1, -1, 1, 1, -1, 1],
);

/// Antipodal greedy set over [`magnitude_order`] with [`GOOD_RELABELLING`].
pub fn structured_seed(set: &MinimalVectorSet) -> Configuration {
    let (perm, signs) = GOOD_RELABELLING;
    greedy_build_with(&magnitude_order(set, &perm, &signs), set, true)
}

pub fn random_order(set: &MinimalVectorSet, rng: &mut impl Rng) -> Vec<u32> {
    let mut order = canonical_order(set);
    order.shuffle(rng);
    order
}

/// Sizes of greedy sets over `runs` random orders; run `i` uses stream `i`
/// of the seeded generator, so the output is independent of thread count.
pub fn greedy_batch(set: &MinimalVectorSet, runs: usize, seed: u64, antipodal: bool) -> Vec<Configuration> {
    set.table();
    (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = chain_rng(seed, i as u64);
            let order = random_order(set, &mut rng);
            greedy_build_with(&order, set, antipodal)
        })
        .collect()
}

pub(crate) fn chain_rng(seed: u64, chain: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chain);
    rng
}

pub fn anneal(initial: &Configuration, params: &AnnealParams, set: &MinimalVectorSet) -> Result<SearchResult> {
    anneal_with(initial, params, set, &NegativeSize)
}

/// Simulated annealing from `initial`. Each iteration draws a fair coin;
/// heads with an addable vector available inserts a uniform addable vector,
/// otherwise a uniform member is removed subject to the Metropolis rule.
pub fn anneal_with(
    initial: &Configuration,
    params: &AnnealParams,
    set: &MinimalVectorSet,
    energy_fn: &dyn Energy,
) -> Result<SearchResult> {
    params.validate()?;
    initial.check_indices(set)?;
    if !is_compatible(initial, set) {
        return Err(Error::InvalidConfiguration("initial set is not compatible".into()));
    }
    if params.antipodal_moves && !is_antipodal(initial, set) {
        return Err(Error::InvalidConfiguration(
            "antipodal moves need an antipodal initial set".into(),
        ));
    }

    let mut rng = chain_rng(params.seed, 0);
    let mut state = SearchState::new(set, params.cache_capacity);
    for &m in initial.members() {
        state.insert(m);
    }
    let pair = |v: u32| -> Option<u32> { params.antipodal_moves.then(|| set.negation(v)) };

    let mut best = initial.clone();
    best.set_antipodal_flag(params.antipodal_moves);
    let mut history = vec![(0, best.len())];
    let mut iterations = 0;
    let reached = |size: usize| params.target_size.is_some_and(|t| size >= t);

    if !reached(best.len()) {
        for t in 1..=params.t_max {
            iterations = t;
            let temperature = temp(t, params);
            let insert = rng.gen::<f64>() < 0.5 && state.addable.len() > 0;
            if insert {
                let c = state.addable.pick(&mut rng).expect("nonempty");
                state.insert(c);
                if let Some(n) = pair(c) {
                    state.insert(n);
                }
            } else if let Some(s) = state.members.pick(&mut rng) {
                let before = energy_fn.energy(&state.view());
                state.remove(s);
                let partner = pair(s);
                if let Some(n) = partner {
                    state.remove(n);
                }
                let delta = energy_fn.energy(&state.view()) - before;
                let accept = if temperature <= 0.0 {
                    delta <= 0.0
                } else {
                    rng.gen::<f64>() < (-delta / temperature).exp()
                };
                if !accept {
                    state.insert(s);
                    if let Some(n) = partner {
                        state.insert(n);
                    }
                }
            }
            let size = state.members.len();
            if size > best.len() {
                best = state.configuration(params.antipodal_moves);
                history.push((t, size));
                if reached(size) {
                    break;
                }
            }
        }
    }

    Ok(SearchResult {
        best,
        history,
        seed: params.seed,
        iterations,
        final_size: state.members.len(),
    })
}

/// Independent chains; chain `i` runs with seed stream `i`. The result with
/// the largest best set wins, ties going to the lowest chain id.
pub fn anneal_chains(
    initials: &[Configuration],
    params: &AnnealParams,
    set: &MinimalVectorSet,
) -> Result<(usize, Vec<SearchResult>)> {
    set.table();
    let results = initials
        .par_iter()
        .enumerate()
        .map(|(i, init)| {
            let mut p = params.clone();
            p.seed = derive_seed(params.seed, i as u64);
            anneal(init, &p, set)
        })
        .collect::<Result<Vec<_>>>()?;
    let winner = results
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.best.len().cmp(&b.best.len()).then(j.cmp(i)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    Ok((winner, results))
}

/// Seed for chain `chain` derived from a run seed.
pub fn derive_seed(seed: u64, chain: u64) -> u64 {
    chain_rng(seed, chain + 1).gen()
}

/// Wall-clock helper for run records.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}
