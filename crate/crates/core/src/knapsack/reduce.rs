//! Answer-preserving instance reductions.

use super::{Item, ItemClass, KnapsackInstance};
use crate::scalar::Scalar;

/// Below this class size bound only the logarithmic reduction applies.
const MERGE_LAMBDA: usize = 729;

/// A reduced instance plus the original `(class, item)` picks already fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced<T> {
    pub instance: KnapsackInstance<T>,
    pub fixed: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction<T> {
    Instance(Reduced<T>),
    /// The instance has no feasible choice.
    DecidedNo,
}

/// Removes every class holding an item that minimizes value and weight at
/// once, fixing that item and lowering the thresholds.
pub fn greedy_reduce<T: Scalar>(inst: &KnapsackInstance<T>) -> Reduced<T> {
    let (mut v_cap, mut w_cap) = (inst.v_cap(), inst.w_cap());
    let mut fixed = Vec::new();
    let mut kept = Vec::new();
    for class in inst.classes() {
        let (vm, wm) = (class.v_min(), class.w_min());
        match class.items.iter().find(|c| c.v == vm && c.w == wm) {
            Some(c) => {
                v_cap = v_cap - vm;
                w_cap = w_cap - wm;
                fixed.extend_from_slice(&c.origin);
            }
            None => kept.push(class.clone()),
        }
    }
    Reduced { instance: KnapsackInstance::from_classes(kept, v_cap, w_cap), fixed }
}

/// Sum of the `count` smallest entries.
fn smallest_sum(mut xs: Vec<i128>, count: usize) -> i128 {
    if count == 0 {
        return 0;
    }
    if count < xs.len() {
        xs.select_nth_unstable(count - 1);
    }
    xs[..count.min(xs.len())].iter().sum()
}

/// `k`-th smallest (1-based) of the values selected by `key`.
fn kth_smallest<T: Scalar>(class: &ItemClass<T>, k: usize, key: fn(&Item<T>) -> T) -> T {
    let mut xs: Vec<T> = class.items.iter().map(key).collect();
    *xs.select_nth_unstable(k - 1).1
}

/// Threshold test over the classes selected by `filter`: some choice can
/// only be feasible if it pays the `⌈k/2⌉` cheapest `q`-th-order gaps in
/// value or in weight.
fn claim_holds<T: Scalar>(inst: &KnapsackInstance<T>, q: usize, filter: impl Fn(&ItemClass<T>) -> bool) -> bool {
    let classes = inst.classes();
    let v_min: i128 = classes.iter().map(|c| c.v_min().widen()).sum();
    let w_min: i128 = classes.iter().map(|c| c.w_min().widen()).sum();
    let chosen: Vec<&ItemClass<T>> = classes.iter().filter(|c| filter(c)).collect();
    let half = chosen.len().div_ceil(2);
    let gaps = |key: fn(&Item<T>) -> T, min: fn(&ItemClass<T>) -> T| -> Vec<i128> {
        chosen.iter().map(|c| kth_smallest(c, q, key).widen() - min(c).widen()).collect()
    };
    let dv = smallest_sum(gaps(|c| c.v, ItemClass::v_min), half);
    let dw = smallest_sum(gaps(|c| c.w, ItemClass::w_min), half);
    v_min + dv <= inst.v_cap().widen() || w_min + dw <= inst.w_cap().widen()
}

/// Greedy reduction followed by the second-smallest-gap test; afterwards
/// `n ≤ 2 log A` or the instance is decided infeasible.
pub fn reduce_n_log<T: Scalar>(inst: &KnapsackInstance<T>) -> Reduction<T> {
    let reduced = greedy_reduce(inst);
    if claim_holds(&reduced.instance, 2, |_| true) {
        Reduction::Instance(reduced)
    } else {
        Reduction::DecidedNo
    }
}

/// `(rank_v, rank_w)` of every item within its class.
fn class_ranks<T: Scalar>(items: &[Item<T>]) -> Vec<(usize, usize)> {
    let rank = |key: fn(&Item<T>) -> T| {
        let mut sorted: Vec<T> = items.iter().map(key).collect();
        sorted.sort_unstable();
        items.iter().map(|c| sorted.partition_point(|&x| x <= key(c))).collect::<Vec<_>>()
    };
    let (rv, rw) = (rank(|c| c.v), rank(|c| c.w));
    rv.into_iter().zip(rw).collect()
}

/// Repeatedly removes the items dominated by an item whose value and weight
/// ranks are both at most a third of the class size.
pub fn prune_class<T: Scalar>(class: &ItemClass<T>) -> ItemClass<T> {
    let mut items = class.items.clone();
    loop {
        let size = items.len();
        let ranks = class_ranks(&items);
        let Some(pivot) = ranks.iter().position(|&(rv, rw)| 3 * rv <= size && 3 * rw <= size) else {
            break;
        };
        let (pv, pw) = (items[pivot].v, items[pivot].w);
        items.retain(|c| !(c.v > pv && c.w > pw));
    }
    ItemClass { items }
}

fn product<T: Scalar>(a: &ItemClass<T>, b: &ItemClass<T>) -> ItemClass<T> {
    let items = a
        .items
        .iter()
        .flat_map(|x| {
            b.items.iter().map(move |y| Item {
                v: x.v + y.v,
                w: x.w + y.w,
                origin: x.origin.iter().chain(&y.origin).copied().collect(),
            })
        })
        .collect();
    ItemClass { items }
}

/// Smallest `q` with `q^3 ≥ x`.
fn ceil_cbrt(x: usize) -> usize {
    let mut q = (x as f64).cbrt().round() as usize;
    while q * q * q < x {
        q += 1;
    }
    while q > 1 && (q - 1) * (q - 1) * (q - 1) >= x {
        q -= 1;
    }
    q
}

/// Full reduction: [`reduce_n_log`], then for `λ ≥ 729` merging of small
/// classes into Cartesian products with domination pruning and a
/// `⌈λ^{1/3}⌉`-th-smallest gap test.
pub fn reduce_instance<T: Scalar>(inst: &KnapsackInstance<T>) -> Reduction<T> {
    let Reduction::Instance(reduced) = reduce_n_log(inst) else {
        return Reduction::DecidedNo;
    };
    let lambda = reduced.instance.lambda();
    if lambda < MERGE_LAMBDA {
        return Reduction::Instance(reduced);
    }
    let small = |c: &ItemClass<T>| c.len() * c.len() <= lambda;
    let mut large = Vec::new();
    let mut pool = Vec::new();
    for class in reduced.instance.classes() {
        let pruned = prune_class(class);
        if small(&pruned) {
            pool.push(pruned);
        } else {
            large.push(pruned);
        }
    }
    while pool.len() >= 2 {
        let b = pool.pop().unwrap();
        let a = pool.pop().unwrap();
        let merged = prune_class(&product(&a, &b));
        if small(&merged) {
            pool.push(merged);
        } else {
            large.push(merged);
        }
    }
    large.extend(pool);
    let instance = KnapsackInstance::from_classes(large, reduced.instance.v_cap(), reduced.instance.w_cap());
    let q = ceil_cbrt(lambda);
    let qualifies = |c: &ItemClass<T>| class_ranks(&c.items).iter().all(|&(rv, rw)| rv.max(rw) >= q);
    if claim_holds(&instance, q, qualifies) {
        Reduction::Instance(Reduced { instance, fixed: reduced.fixed })
    } else {
        Reduction::DecidedNo
    }
}
