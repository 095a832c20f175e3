//! Meet-in-the-middle solvers over ranked prefix and suffix lists.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::generator::{Entry, PrefixGenerator};
use super::reduce::{reduce_instance, Reduced, Reduction};
use super::two_class::two_class_sorted;
use super::{Choice, KnapsackInstance};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Feasible choice, if any, found by the `√(aλ)` meet-in-the-middle search.
pub fn solve<T: Scalar>(inst: &KnapsackInstance<T>) -> Option<Choice> {
    let reduced = match reduce_instance(inst) {
        Reduction::DecidedNo => return None,
        Reduction::Instance(r) => r,
    };
    let picks = match trivial(&reduced) {
        Some(answer) => answer,
        None => {
            let (fwd, bwd) = oriented(&reduced.instance);
            lockstep(Run::new(&fwd, Mode::Mim), Run::new(&bwd, Mode::Mim)).expect("unbounded runs finish")
        }
    };
    picks.map(|p| expand(inst, &reduced, &p))
}

/// Feasible choice, if any, found by the search that moves `k` guessed
/// classes to the front. Raises `k` whenever both orientations show that
/// more than `λ^{2k+1}` choices pass their threshold.
pub fn solve_k<T: Scalar>(inst: &KnapsackInstance<T>, k: usize) -> Result<Option<Choice>> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let reduced = match reduce_instance(inst) {
        Reduction::DecidedNo => return Ok(None),
        Reduction::Instance(r) => r,
    };
    if let Some(answer) = trivial(&reduced) {
        return Ok(answer.map(|p| expand(inst, &reduced, &p)));
    }
    let n = reduced.instance.n();
    let lambda = reduced.instance.lambda() as u128;
    let (fwd, bwd) = oriented(&reduced.instance);
    let mut k = k.min(n);
    loop {
        let limit = if k == n { u128::MAX } else { lambda.saturating_pow(k as u32 + 1) };
        let mode = Mode::K { k, limit };
        if let Some(answer) = lockstep(Run::new(&fwd, mode), Run::new(&bwd, mode)) {
            return Ok(answer.map(|p| expand(inst, &reduced, &p)));
        }
        k += 1;
    }
}

/// Decides instances with no class left after reduction.
fn trivial<T: Scalar>(reduced: &Reduced<T>) -> Option<Option<Vec<usize>>> {
    let inst = &reduced.instance;
    (inst.n() == 0).then(|| (inst.v_cap() >= T::zero() && inst.w_cap() >= T::zero()).then(Vec::new))
}

/// Maps picks on the reduced instance back to a choice on `original`.
fn expand<T: Scalar>(original: &KnapsackInstance<T>, reduced: &Reduced<T>, picks: &[usize]) -> Choice {
    let mut out = vec![usize::MAX; original.n()];
    let chosen = picks.iter().enumerate().flat_map(|(c, &j)| &reduced.instance.classes()[c].items[j].origin);
    for &(i, j) in reduced.fixed.iter().chain(chosen) {
        out[i] = j;
    }
    let choice = Choice { picks: out };
    assert!(original.is_feasible(&choice), "reconstructed choice violates a threshold");
    choice
}

/// Class item pairs with thresholds, in value and in weight orientation.
struct Oriented<T> {
    classes: Vec<Vec<(T, T)>>,
    v_cap: T,
    w_cap: T,
}

fn oriented<T: Scalar>(inst: &KnapsackInstance<T>) -> (Oriented<T>, Oriented<T>) {
    let classes: Vec<Vec<(T, T)>> = inst.classes().iter().map(|c| c.pairs()).collect();
    let swapped = classes.iter().map(|c| c.iter().map(|&(v, w)| (w, v)).collect()).collect();
    (
        Oriented { classes, v_cap: inst.v_cap(), w_cap: inst.w_cap() },
        Oriented { classes: swapped, v_cap: inst.w_cap(), w_cap: inst.v_cap() },
    )
}

#[derive(Debug, Clone, Copy)]
enum Mode {
    Mim,
    /// `limit` bounds `r` before the run gives up on this `k`.
    K {
        k: usize,
        limit: u128,
    },
}

enum Poll {
    Pending,
    Done(Option<Vec<usize>>),
    Abandoned,
}

/// Alternates single steps of the two runs; `None` when both give up.
fn lockstep<T: Scalar>(a: Run<'_, T>, b: Run<'_, T>) -> Option<Option<Vec<usize>>> {
    let mut runs = [Some(a), Some(b)];
    while runs.iter().any(Option::is_some) {
        for slot in runs.iter_mut() {
            let Some(run) = slot else { continue };
            match run.poll() {
                Poll::Pending => {}
                Poll::Done(answer) => return Some(answer),
                Poll::Abandoned => *slot = None,
            }
        }
    }
    None
}

/// Lexicographic `k`-subsets of `0..n`, each extended by the remaining
/// indices in increasing order.
struct FrontOrders {
    n: usize,
    current: Option<Vec<usize>>,
}

impl FrontOrders {
    fn new(n: usize, k: usize) -> Self {
        FrontOrders { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for FrontOrders {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let subset = self.current.take()?;
        let k = subset.len();
        let mut order = subset.clone();
        order.extend((0..self.n).filter(|i| !subset.contains(i)));
        let mut next = subset;
        if let Some(i) = (0..k).rev().find(|&i| next[i] < self.n - k + i) {
            next[i] += 1;
            for t in i + 1..k {
                next[t] = next[t - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(order)
    }
}

/// Smallest `ℓ ≥ 1` with `ℓ^{k+1} ≥ r^k`.
fn ceil_power_root(r: usize, k: usize) -> usize {
    let target = (r as u128).checked_pow(k as u32);
    let reaches = |l: usize| match (target, (l as u128).checked_pow(k as u32 + 1)) {
        (Some(t), Some(p)) => p >= t,
        (None, Some(_)) => false,
        (_, None) => true,
    };
    let mut l = ((r as f64).powf(k as f64 / (k as f64 + 1.0)).ceil() as usize).max(1);
    while !reaches(l) {
        l += 1;
    }
    while l > 1 && reaches(l - 1) {
        l -= 1;
    }
    l
}

struct Search<T> {
    order: Vec<usize>,
    left: PrefixGenerator<T>,
    right: PrefixGenerator<T>,
    r: usize,
    ell: usize,
}

/// One orientation of the search over all class orders of its mode.
struct Run<'a, T> {
    inst: &'a Oriented<T>,
    lambda: usize,
    /// Per class, the value rank of each item within its class.
    ranks: Vec<Vec<usize>>,
    mode: Mode,
    orders: FrontOrders,
    search: Option<Search<T>>,
}

impl<'a, T: Scalar> Run<'a, T> {
    fn new(inst: &'a Oriented<T>, mode: Mode) -> Self {
        let n = inst.classes.len();
        let lambda = inst.classes.iter().map(Vec::len).max().unwrap_or(1);
        let (orders, ranks) = match mode {
            Mode::Mim => (FrontOrders::new(n, 0), Vec::new()),
            Mode::K { k, .. } => {
                let ranks = inst
                    .classes
                    .iter()
                    .map(|c| {
                        let mut vs: Vec<T> = c.iter().map(|x| x.0).collect();
                        vs.sort_unstable();
                        c.iter().map(|x| vs.partition_point(|&y| y <= x.0)).collect()
                    })
                    .collect();
                (FrontOrders::new(n, k), ranks)
            }
        };
        Run { inst, lambda, ranks, mode, orders, search: None }
    }

    fn ell(&self, r: usize) -> usize {
        match self.mode {
            Mode::Mim => r.div_ceil(self.lambda),
            Mode::K { k, .. } => ceil_power_root(r, k),
        }
    }

    fn poll(&mut self) -> Poll {
        let Some(mut s) = self.search.take() else {
            let Some(order) = self.orders.next() else {
                return Poll::Done(None);
            };
            let classes = &self.inst.classes;
            let mut left = PrefixGenerator::new(order.iter().map(|&c| classes[c].clone()).collect());
            let mut right = PrefixGenerator::new(order.iter().rev().map(|&c| classes[c].clone()).collect());
            let ell = self.ell(1);
            left.advance_to(ell);
            right.advance_to(1);
            self.search = Some(Search { order, left, right, r: 1, ell });
            return Poll::Pending;
        };
        if self.may_grow(&s) {
            s.r += 1;
            if let Mode::K { limit, .. } = self.mode {
                if s.r as u128 > limit {
                    return Poll::Abandoned;
                }
            }
            s.ell = self.ell(s.r);
            s.left.advance_to(s.ell);
            s.right.advance_to(s.r);
            self.search = Some(s);
            return Poll::Pending;
        }
        match self.merge(&s) {
            Some(picks) => Poll::Done(Some(picks)),
            None => Poll::Pending,
        }
    }

    /// Whether some split point still has its `ℓ`-th prefix and `r`-th
    /// suffix fitting the value threshold together.
    fn may_grow(&self, s: &Search<T>) -> bool {
        let n = self.inst.classes.len();
        (0..=n).any(|j| match (s.left.value(j, s.ell - 1), s.right.value(n - j, s.r - 1)) {
            (Some(a), Some(b)) => a + b <= self.inst.v_cap,
            _ => false,
        })
    }

    /// Pairs `L_{j-1} ⊙ C_j` with `R_{j+1}` for every split `j`.
    fn merge(&self, s: &Search<T>) -> Option<Vec<usize>> {
        let n = self.inst.classes.len();
        for j in 1..=n {
            let class = s.order[j - 1];
            let items: Vec<usize> = match self.mode {
                Mode::K { k, .. } if j > k => (0..self.inst.classes[class].len())
                    .filter(|&c| (self.ranks[class][c] as u128).saturating_pow(k as u32) <= s.ell as u128)
                    .collect(),
                _ => (0..self.inst.classes[class].len()).collect(),
            };
            let prefix = &s.left.list(j - 1)[..s.ell.min(s.left.list(j - 1).len())];
            let (firsts, ids) = extend_sorted(prefix, &self.inst.classes[class], &items);
            let suffix = &s.right.list(n - j)[..s.r.min(s.right.list(n - j).len())];
            let seconds: Vec<(T, T)> = suffix.iter().map(|e| (e.v, e.w)).collect();
            if let Some((a, b)) = two_class_sorted(&firsts, &seconds, self.inst.v_cap, self.inst.w_cap) {
                let mut picks = vec![0; n];
                let (pos, item) = ids[a];
                for (t, p) in s.left.picks(j - 1, pos).into_iter().enumerate() {
                    picks[s.order[t]] = p;
                }
                picks[class] = item;
                for (t, p) in s.right.picks(n - j, b).into_iter().enumerate() {
                    picks[s.order[n - 1 - t]] = p;
                }
                return Some(picks);
            }
        }
        None
    }
}

/// Extended pairs and their `(prefix position, item)` ids.
type Extended<T> = (Vec<(T, T)>, Vec<(usize, usize)>);

/// `{L ∪ {c}}` for the given items, sorted by value via a k-way merge of the
/// shifted prefix list. Returns pairs and `(prefix position, item)` ids.
fn extend_sorted<T: Scalar>(prefix: &[Entry<T>], class: &[(T, T)], items: &[usize]) -> Extended<T> {
    let total = prefix.len() * items.len();
    let mut pairs = Vec::with_capacity(total);
    let mut ids = Vec::with_capacity(total);
    if prefix.is_empty() {
        return (pairs, ids);
    }
    let mut heap: BinaryHeap<Reverse<(T, usize, usize)>> =
        items.iter().map(|&c| Reverse((prefix[0].v + class[c].0, c, 0))).collect();
    while let Some(Reverse((v, c, pos))) = heap.pop() {
        pairs.push((v, prefix[pos].w + class[c].1));
        ids.push((pos, c));
        if pos + 1 < prefix.len() {
            heap.push(Reverse((prefix[pos + 1].v + class[c].0, c, pos + 1)));
        }
    }
    (pairs, ids)
}
