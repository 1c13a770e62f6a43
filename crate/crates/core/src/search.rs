//! Exhaustive search for perfect-code sets `T` in every abelian group of
//! order `2n^2 + 1`.
//!
//! Candidates are `T = {e} ∪ P_1 ∪ ... ∪ P_n` for `n` distinct inverse pairs
//! `P_i = {a, -a}`, so `|T| = 2n+1`, `e ∈ T` and `T = T^(-1)` hold by
//! construction and only the square identity `T^2 = 2G + T^(2) + (2n-2)e`
//! remains. The search grows `T^2` incrementally, one pair at a time; every
//! non-identity coefficient of the final square is 2 or 3, so a partial
//! square with a coefficient above 3 rules out all of its completions.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{enumerate_abelian_groups, gcd, GroupElement, GroupSpec, RankTable};
use crate::ball::generate_ball;
use crate::error::{Error, Result};
use crate::groupring::{check_theorem3, tiling_group_order, GroupRingElement};
use crate::tiling::TilingHomomorphism;

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Refuse when the total candidate count exceeds this.
    pub budget: u128,
    /// Ignore the budget.
    pub force: bool,
    /// Keep one candidate per multiplier orbit (cyclic groups only).
    pub reduce: bool,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Progress lines on standard error.
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            force: false,
            reduce: false,
            threads: None,
            progress: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub group: GroupSpec,
    /// `T` in rank order.
    pub elements: Vec<GroupElement>,
    /// Size of the multiplier orbit this representative stands for.
    pub orbit_size: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchMetadata {
    pub wall_time_secs: f64,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: u64,
    pub reduced: bool,
    pub groups_examined: Vec<GroupSpec>,
    /// `C(n^2, n)` per group.
    pub candidate_space: Vec<u64>,
    /// Candidates decided per group. Without reduction this covers the whole
    /// space (pruned subtrees count every candidate they contain); with
    /// reduction it counts orbit representatives.
    pub candidates_tested: Vec<u64>,
    /// Candidates that reached the full square check.
    pub leaves_evaluated: Vec<u64>,
    pub solutions: Vec<Solution>,
    /// Solutions counted over the full candidate space.
    pub lifted_solution_count: u64,
    pub metadata: SearchMetadata,
}

/// Unordered inverse pairs `{g, -g}` of a group of odd order, listed by the
/// rank of the smaller member.
pub fn inverse_pairs(spec: &GroupSpec) -> Result<Vec<(GroupElement, GroupElement)>> {
    rank_pairs(spec)?
        .into_iter()
        .map(|(a, b)| Ok((spec.element_at(a as u64)?, spec.element_at(b as u64)?)))
        .collect()
}

fn rank_pairs(spec: &GroupSpec) -> Result<Vec<(usize, usize)>> {
    if spec.order().is_multiple_of(2) {
        return Err(Error::EvenOrder(spec.order()));
    }
    let table = RankTable::new(spec);
    Ok((1..table.order())
        .filter_map(|r| {
            let s = table.neg(r);
            (r < s).then_some((r, s))
        })
        .collect())
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Lexicographic `k`-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }

    /// Subsets whose smallest element is `first`.
    fn starting_with(n: usize, k: usize, first: usize) -> impl Iterator<Item = Vec<usize>> {
        let rest = if first < n {
            Combinations::new(n - first - 1, k.saturating_sub(1))
        } else {
            Combinations {
                n: 0,
                current: Vec::new(),
                done: true,
            }
        };
        rest.map(move |c| {
            std::iter::once(first)
                .chain(c.into_iter().map(|x| x + first + 1))
                .collect()
        })
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        match (0..k).rev().find(|&i| self.current[i] < self.n - k + i) {
            Some(i) => {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// The multipliers `x -> t x`, `gcd(t, |G|) = 1`, acting on inverse pairs.
///
/// `t` and `-t` act identically on pairs, so one of each is kept. Groups
/// that are not cyclic get the trivial action.
#[derive(Debug, Clone)]
pub struct MultiplierAction {
    // perms[j][i] = index of the pair t_j * P_i
    perms: Vec<Vec<usize>>,
}

impl MultiplierAction {
    pub fn for_group(spec: &GroupSpec) -> Result<Self> {
        let pairs = rank_pairs(spec)?;
        if !spec.is_cyclic() {
            return Ok(Self::trivial(pairs.len()));
        }
        let order = spec.order();
        let table = RankTable::new(spec);
        let mut index = vec![usize::MAX; order as usize];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            index[a] = i;
            index[b] = i;
        }
        let perms = (1..=order / 2)
            .filter(|&t| gcd(t, order) == 1)
            .map(|t| {
                pairs
                    .iter()
                    .map(|&(a, _)| index[table.scalar_mul(t as i64, a)])
                    .collect()
            })
            .collect();
        Ok(MultiplierAction { perms })
    }

    pub fn trivial(pair_count: usize) -> Self {
        MultiplierAction {
            perms: vec![(0..pair_count).collect()],
        }
    }

    /// Number of distinct pair permutations (including the identity).
    pub fn size(&self) -> usize {
        self.perms.len()
    }

    fn image(&self, perm: &[usize], candidate: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = candidate.iter().map(|&i| perm[i]).collect();
        img.sort_unstable();
        img
    }

    /// Whether `candidate` (sorted) is the lexicographically least member of its orbit.
    pub fn is_orbit_min(&self, candidate: &[usize]) -> bool {
        self.perms
            .iter()
            .all(|p| self.image(p, candidate).as_slice() >= candidate)
    }

    pub fn orbit(&self, candidate: &[usize]) -> BTreeSet<Vec<usize>> {
        self.perms
            .iter()
            .map(|p| self.image(p, candidate))
            .collect()
    }
}

/// Keeps one representative per multiplier orbit of a candidate stream.
pub fn multiplier_reduce<'a, I>(
    action: &'a MultiplierAction,
    candidates: I,
) -> impl Iterator<Item = Vec<usize>> + 'a
where
    I: IntoIterator<Item = Vec<usize>>,
    I::IntoIter: 'a,
{
    candidates
        .into_iter()
        .filter(move |c| action.is_orbit_min(c))
}

/// Immutable per-group tables shared by all search workers.
#[derive(Debug, Clone)]
pub struct SearchContext {
    spec: GroupSpec,
    n: usize,
    table: RankTable,
    pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Default)]
struct Tally {
    covered: u128,
    leaves: u64,
    found: Vec<Vec<usize>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.covered += other.covered;
        self.leaves += other.leaves;
        self.found.extend(other.found);
        self
    }
}

/// Mutable partial square `S^2` for the current partial set `S`.
struct Workspace {
    counts: Vec<i32>,
    members: Vec<usize>,
    touched: Vec<(usize, i32)>,
}

impl SearchContext {
    pub fn new(spec: &GroupSpec, n: usize) -> Result<Self> {
        if spec.order() != tiling_group_order(n as u64) {
            return Err(Error::OrderMismatch {
                expected: tiling_group_order(n as u64),
                found: spec.order(),
            });
        }
        Ok(SearchContext {
            spec: spec.clone(),
            n,
            table: RankTable::new(spec),
            pairs: rank_pairs(spec)?,
        })
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Index of the pair containing `g`, if `g` is not the identity.
    pub fn pair_index(&self, g: &GroupElement) -> Result<Option<usize>> {
        let r = self.spec.rank_of(g)? as usize;
        Ok(self.pairs.iter().position(|&(a, b)| a == r || b == r))
    }

    fn workspace(&self) -> Workspace {
        let mut counts = vec![0; self.table.order()];
        counts[0] = 1;
        Workspace {
            counts,
            members: vec![0],
            touched: Vec::new(),
        }
    }

    /// Adds pair `i` to the partial set; returns false (with the square
    /// unchanged) when a non-identity coefficient would exceed 3.
    fn push(&self, ws: &mut Workspace, i: usize) -> bool {
        let (a, na) = self.pairs[i];
        let t = &self.table;
        ws.touched.clear();
        for &s in &ws.members {
            ws.touched.push((t.add(s, a), 2));
            ws.touched.push((t.add(s, na), 2));
        }
        ws.touched.push((t.add(a, a), 1));
        ws.touched.push((t.add(na, na), 1));
        ws.touched.push((0, 2));
        let mut ok = true;
        for &(g, by) in &ws.touched {
            ws.counts[g] += by;
            ok &= g == 0 || ws.counts[g] <= 3;
        }
        if ok {
            ws.members.push(a);
            ws.members.push(na);
        } else {
            for &(g, by) in &ws.touched {
                ws.counts[g] -= by;
            }
        }
        ok
    }

    fn pop(&self, ws: &mut Workspace) {
        let na = ws.members.pop().expect("pair");
        let a = ws.members.pop().expect("pair");
        let t = &self.table;
        for &s in &ws.members {
            ws.counts[t.add(s, a)] -= 2;
            ws.counts[t.add(s, na)] -= 2;
        }
        ws.counts[t.add(a, a)] -= 1;
        ws.counts[t.add(na, na)] -= 1;
        ws.counts[0] -= 2;
    }

    /// Full square identity on a complete candidate.
    fn square_identity_holds(&self, ws: &Workspace) -> bool {
        let mut doubled = vec![0i32; ws.counts.len()];
        for &m in &ws.members {
            doubled[self.table.add(m, m)] += 1;
        }
        let two_n_minus_2 = 2 * self.n as i32 - 2;
        ws.counts.iter().enumerate().all(|(g, &c)| {
            let expected = 2 + doubled[g] + if g == 0 { two_n_minus_2 } else { 0 };
            c == expected
        })
    }

    /// Whether the candidate made of the given pair indices satisfies every
    /// condition.
    pub fn accepts(&self, pair_indices: &[usize]) -> bool {
        let mut ws = self.workspace();
        for &i in pair_indices {
            if !self.push(&mut ws, i) {
                return false;
            }
        }
        pair_indices.len() == self.n && self.square_identity_holds(&ws)
    }

    fn dfs(
        &self,
        ws: &mut Workspace,
        start: usize,
        depth: usize,
        chosen: &mut Vec<usize>,
        tally: &mut Tally,
    ) {
        let p = self.pairs.len();
        if depth == self.n {
            tally.covered += 1;
            tally.leaves += 1;
            if self.square_identity_holds(ws) {
                tally.found.push(chosen.clone());
            }
            return;
        }
        let slots = self.n - depth;
        for i in start..=p - slots {
            if self.push(ws, i) {
                chosen.push(i);
                self.dfs(ws, i + 1, depth + 1, chosen, tally);
                chosen.pop();
                self.pop(ws);
            } else {
                tally.covered += binomial((p - i - 1) as u64, (slots - 1) as u64);
            }
        }
    }

    fn search_prefix(&self, first: usize) -> Tally {
        let mut tally = Tally::default();
        let mut ws = self.workspace();
        let slots = self.n;
        if self.push(&mut ws, first) {
            let mut chosen = vec![first];
            self.dfs(&mut ws, first + 1, 1, &mut chosen, &mut tally);
        } else {
            tally.covered += binomial((self.pairs.len() - first - 1) as u64, (slots - 1) as u64);
        }
        tally
    }

    fn search_reduced_prefix(&self, action: &MultiplierAction, first: usize) -> Tally {
        let mut tally = Tally::default();
        let p = self.pairs.len();
        for c in multiplier_reduce(action, Combinations::starting_with(p, self.n, first)) {
            tally.covered += 1;
            let mut ws = self.workspace();
            let mut ok = true;
            for &i in &c {
                if !self.push(&mut ws, i) {
                    ok = false;
                    break;
                }
            }
            if ok {
                tally.leaves += 1;
                if self.square_identity_holds(&ws) {
                    tally.found.push(c);
                }
            }
        }
        tally
    }

    fn elements_of(&self, pair_indices: &[usize]) -> Vec<GroupElement> {
        let mut ranks: Vec<usize> = std::iter::once(0)
            .chain(
                pair_indices
                    .iter()
                    .flat_map(|&i| [self.pairs[i].0, self.pairs[i].1]),
            )
            .collect();
        ranks.sort_unstable();
        ranks
            .into_iter()
            .map(|r| self.spec.element_at(r as u64).expect("rank"))
            .collect()
    }

    /// Cross-checks an accepted candidate with the independent ball-bijection
    /// criterion and the ring-level condition checker.
    fn reverify(&self, pair_indices: &[usize]) -> Result<()> {
        let images = pair_indices
            .iter()
            .map(|&i| self.spec.element_at(self.pairs[i].0 as u64))
            .collect::<Result<Vec<_>>>()?;
        let phi = TilingHomomorphism::new(self.spec.clone(), images)?;
        let ball = generate_ball(self.n, 2, 1, 1)?;
        let bijective = phi.verify_tiling(&ball)?.bijective;
        let t = GroupRingElement::from_multiset(&self.spec, &self.elements_of(pair_indices))?;
        let ring_ok = check_theorem3(&t, self.n as u64)?.passed();
        if bijective && ring_ok {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "search accepted {pair_indices:?} in {} but bijective={bijective}, ring check={ring_ok}",
                self.spec
            )))
        }
    }
}

struct GroupOutcome {
    covered: u128,
    leaves: u64,
    solutions: Vec<Solution>,
    lifted: u64,
}

fn search_group(ctx: &SearchContext, reduce: bool) -> Result<GroupOutcome> {
    let p = ctx.pair_count();
    let prefixes: Vec<usize> = (0..=p - ctx.n).collect();
    let tally = if reduce {
        let action = MultiplierAction::for_group(&ctx.spec)?;
        prefixes
            .par_iter()
            .map(|&f| ctx.search_reduced_prefix(&action, f))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), Tally::merge)
    } else {
        prefixes
            .par_iter()
            .map(|&f| ctx.search_prefix(f))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), Tally::merge)
    };
    let action = if reduce {
        Some(MultiplierAction::for_group(&ctx.spec)?)
    } else {
        None
    };
    let mut solutions = Vec::with_capacity(tally.found.len());
    let mut lifted = 0u64;
    for c in &tally.found {
        ctx.reverify(c)?;
        let orbit_size = action.as_ref().map_or(1, |a| a.orbit(c).len() as u64);
        lifted += orbit_size;
        solutions.push(Solution {
            group: ctx.spec.clone(),
            elements: ctx.elements_of(c),
            orbit_size,
        });
    }
    Ok(GroupOutcome {
        covered: tally.covered,
        leaves: tally.leaves,
        solutions,
        lifted,
    })
}

/// Searches every abelian group of order `2n^2 + 1`.
pub fn search_tilings(n: u64, options: &SearchOptions) -> Result<SearchResult> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "search needs n >= 3, got {n}"
        )));
    }
    let started = Instant::now();
    let groups = enumerate_abelian_groups(tiling_group_order(n))?;
    let per_group = binomial(n * n, n);
    let total = per_group * groups.len() as u128;
    if total > options.budget && !options.force {
        return Err(Error::BudgetExceeded {
            candidates: total,
            budget: options.budget,
        });
    }
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = options.threads {
            builder = builder.num_threads(t);
        }
        builder
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
    };
    let threads = pool.current_num_threads();

    let mut result = SearchResult {
        n,
        reduced: options.reduce,
        groups_examined: Vec::new(),
        candidate_space: Vec::new(),
        candidates_tested: Vec::new(),
        leaves_evaluated: Vec::new(),
        solutions: Vec::new(),
        lifted_solution_count: 0,
        metadata: SearchMetadata {
            wall_time_secs: 0.0,
            threads,
        },
    };
    for spec in groups {
        if options.progress {
            eprintln!("searching {spec}: {per_group} candidates");
        }
        let ctx = SearchContext::new(&spec, n as usize)?;
        let outcome = pool.install(|| search_group(&ctx, options.reduce))?;
        if !options.reduce && outcome.covered != per_group {
            return Err(Error::Internal(format!(
                "covered {} of {per_group} candidates in {spec}",
                outcome.covered
            )));
        }
        if options.progress {
            eprintln!(
                "  {spec}: tested {}, evaluated {}, solutions {}",
                outcome.covered,
                outcome.leaves,
                outcome.solutions.len()
            );
        }
        result.groups_examined.push(spec);
        result.candidate_space.push(per_group as u64);
        result.candidates_tested.push(outcome.covered as u64);
        result.leaves_evaluated.push(outcome.leaves);
        result.lifted_solution_count += outcome.lifted;
        result.solutions.extend(outcome.solutions);
    }
    result.metadata.wall_time_secs = started.elapsed().as_secs_f64();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::golay11_tiling;

    fn z(m: u64) -> GroupSpec {
        GroupSpec::cyclic(m).unwrap()
    }

    #[test]
    fn pair_listing() {
        assert_eq!(inverse_pairs(&z(19)).unwrap().len(), 9);
        assert_eq!(
            inverse_pairs(&GroupSpec::new(vec![3; 5]).unwrap())
                .unwrap()
                .len(),
            121
        );
        let p = inverse_pairs(&z(5)).unwrap();
        let ranks: Vec<_> = p
            .iter()
            .map(|(a, b)| (a.residues()[0], b.residues()[0]))
            .collect();
        assert_eq!(ranks, vec![(1, 4), (2, 3)]);
        assert!(matches!(inverse_pairs(&z(8)), Err(Error::EvenOrder(8))));
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let all: Vec<_> = Combinations::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        let split: usize = (0..=6)
            .map(|f| Combinations::starting_with(9, 3, f).count())
            .sum();
        assert_eq!(split, 84);
        assert_eq!(binomial(25, 5), 53130);
    }

    // Orbits by repeated application of raw multipliers to element sets,
    // without the pair-permutation tables.
    fn orbit_oracle(m: u64, k: usize) -> Vec<BTreeSet<BTreeSet<u64>>> {
        let pairs: Vec<(u64, u64)> = (1..m).filter(|&a| a < m - a).map(|a| (a, m - a)).collect();
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for c in Combinations::new(pairs.len(), k) {
            let set: BTreeSet<u64> = c.iter().flat_map(|&i| [pairs[i].0, pairs[i].1]).collect();
            if seen.contains(&set) {
                continue;
            }
            let orbit: BTreeSet<BTreeSet<u64>> = (1..m)
                .filter(|&t| gcd(t, m) == 1)
                .map(|t| set.iter().map(|&x| x * t % m).collect())
                .collect();
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit);
        }
        orbits
    }

    #[test]
    fn single_pair_orbits() {
        let action = MultiplierAction::for_group(&z(19)).unwrap();
        let reps: Vec<_> = multiplier_reduce(&action, Combinations::new(9, 1)).collect();
        assert_eq!(reps, vec![vec![0]]);
        assert_eq!(orbit_oracle(19, 1).len(), 1);

        let action = MultiplierAction::for_group(&z(33)).unwrap();
        let reps: Vec<_> = multiplier_reduce(&action, Combinations::new(16, 1)).collect();
        let oracle = orbit_oracle(33, 1);
        assert_eq!(reps.len(), oracle.len());
        let sizes: Vec<usize> = reps.iter().map(|r| action.orbit(r).len()).collect();
        let mut oracle_sizes: Vec<usize> = oracle.iter().map(|o| o.len()).collect();
        let mut got = sizes.clone();
        got.sort();
        oracle_sizes.sort();
        assert_eq!(got, oracle_sizes);
        assert_eq!(sizes.iter().sum::<usize>(), 16);
    }

    #[test]
    fn orbits_partition_candidate_space() {
        for (m, k) in [(19u64, 3usize), (33, 4), (51, 2)] {
            let p = ((m - 1) / 2) as usize;
            let action = MultiplierAction::for_group(&z(m)).unwrap();
            let reps: Vec<_> = multiplier_reduce(&action, Combinations::new(p, k)).collect();
            let lifted: usize = reps.iter().map(|r| action.orbit(r).len()).sum();
            assert_eq!(lifted as u128, binomial(p as u64, k as u64));
            assert_eq!(reps.len(), orbit_oracle(m, k).len());
        }
    }

    #[test]
    fn trivial_action_keeps_everything() {
        let action = MultiplierAction::trivial(9);
        assert_eq!(
            multiplier_reduce(&action, Combinations::new(9, 3)).count(),
            84
        );
        let noncyclic = MultiplierAction::for_group(&GroupSpec::new(vec![3, 3]).unwrap()).unwrap();
        assert_eq!(noncyclic.size(), 1);
    }

    #[test]
    fn incremental_square_matches_ring_product() {
        let spec = z(51);
        let ctx = SearchContext::new(&spec, 5).unwrap();
        for c in Combinations::new(25, 3).step_by(37) {
            let mut ws = ctx.workspace();
            let mut all_ok = true;
            for &i in &c {
                all_ok &= ctx.push(&mut ws, i);
                if !all_ok {
                    break;
                }
            }
            if !all_ok {
                // a rejected push must leave the square untouched
                continue;
            }
            let t = GroupRingElement::from_ranks(&spec, ws.members.iter().copied());
            let sq = t.multiply(&t).unwrap();
            assert_eq!(
                sq.coefficients().to_vec(),
                ws.counts.iter().map(|&x| x as i64).collect::<Vec<_>>()
            );
            ctx.pop(&mut ws);
            let smaller = GroupRingElement::from_ranks(&spec, ws.members.iter().copied());
            let sq = smaller.multiply(&smaller).unwrap();
            assert_eq!(
                sq.coefficients().to_vec(),
                ws.counts.iter().map(|&x| x as i64).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn rejected_push_restores_state() {
        let spec = z(19);
        let ctx = SearchContext::new(&spec, 3).unwrap();
        for c in Combinations::new(9, 2) {
            let mut ws = ctx.workspace();
            assert!(ctx.push(&mut ws, c[0]));
            let before = ws.counts.clone();
            if !ctx.push(&mut ws, c[1]) {
                assert_eq!(ws.counts, before);
                assert_eq!(ws.members.len(), 3);
            }
        }
    }

    #[test]
    fn golay_set_is_accepted() {
        let phi = golay11_tiling();
        let ctx = SearchContext::new(phi.spec(), 11).unwrap();
        let mut idx: Vec<usize> = phi
            .images()
            .iter()
            .map(|g| ctx.pair_index(g).unwrap().unwrap())
            .collect();
        idx.sort();
        assert!(ctx.accepts(&idx));
        ctx.reverify(&idx).unwrap();
        let mut broken = idx.clone();
        broken[0] = (0..121).find(|i| !idx.contains(i)).unwrap();
        broken.sort();
        assert!(!ctx.accepts(&broken));
    }

    #[test]
    fn small_searches_find_nothing() {
        for (n, count) in [(3u64, 84u64), (4, 1820)] {
            let r = search_tilings(n, &SearchOptions::default()).unwrap();
            assert!(r.solutions.is_empty());
            assert_eq!(r.candidates_tested, vec![count]);
            assert_eq!(r.candidate_space, vec![count]);
        }
    }

    #[test]
    fn reduction_agrees_at_n3() {
        let plain = search_tilings(3, &SearchOptions::default()).unwrap();
        let reduced = search_tilings(
            3,
            &SearchOptions {
                reduce: true,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain.lifted_solution_count, reduced.lifted_solution_count);
        assert!(reduced.candidates_tested[0] < 84);
    }

    #[test]
    fn budget_and_argument_errors() {
        match search_tilings(11, &SearchOptions::default()) {
            Err(Error::BudgetExceeded { candidates, budget }) => {
                assert_eq!(candidates, binomial(121, 11) * 7);
                assert_eq!(budget, DEFAULT_BUDGET);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
        assert!(search_tilings(2, &SearchOptions::default()).is_err());
        let tight = SearchOptions {
            budget: 83,
            ..SearchOptions::default()
        };
        assert!(search_tilings(3, &tight).is_err());
    }
}
