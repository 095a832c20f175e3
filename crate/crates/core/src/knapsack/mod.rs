//! Multichoice knapsack: pick one item per class so that both the value sum
//! and the weight sum stay within their thresholds.

mod brute;
mod generator;
mod reduce;
mod solve;
mod two_class;

pub use brute::{brute_force, count_feasible, rank_v, rank_w, FeasibleCounts};
pub use generator::{Entry, PrefixGenerator};
pub use reduce::{greedy_reduce, prune_class, reduce_instance, reduce_n_log, Reduced, Reduction};
pub use solve::{solve, solve_k};
pub use two_class::solve_two_class;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// An item with the `(class, item)` positions it stands for in the original
/// instance; merged classes carry several.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item<T> {
    pub v: T,
    pub w: T,
    pub origin: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemClass<T> {
    pub items: Vec<Item<T>>,
}

impl<T: Scalar> ItemClass<T> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn v_min(&self) -> T {
        self.items.iter().map(|c| c.v).min().expect("nonempty class")
    }

    pub fn w_min(&self) -> T {
        self.items.iter().map(|c| c.w).min().expect("nonempty class")
    }

    pub(crate) fn pairs(&self) -> Vec<(T, T)> {
        self.items.iter().map(|c| (c.v, c.w)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance<T> {
    classes: Vec<ItemClass<T>>,
    v_cap: T,
    w_cap: T,
}

impl<T: Scalar> KnapsackInstance<T> {
    /// Builds an instance from `(v, w)` pairs per class.
    ///
    /// Needs at least one class, no empty class, and sums of per-class
    /// extremes plus the thresholds that fit twice over in `T`.
    pub fn new(classes: Vec<Vec<(T, T)>>, v_cap: T, w_cap: T) -> Result<Self> {
        if classes.is_empty() {
            return domain("instance needs at least one class");
        }
        if let Some(i) = classes.iter().position(Vec::is_empty) {
            return domain(format!("class {} is empty", i + 1));
        }
        let bound = |f: fn(&(T, T)) -> T, cap: T| -> i128 {
            classes.iter().map(|c| c.iter().map(|x| f(x).widen().abs()).max().unwrap()).sum::<i128>()
                + cap.widen().abs()
        };
        let worst = bound(|x| x.0, v_cap).max(bound(|x| x.1, w_cap));
        if T::narrow(2 * worst).is_none() {
            return Err(Error::Overflow("item sums do not fit the value type".into()));
        }
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| ItemClass {
                items: c.into_iter().enumerate().map(|(j, (v, w))| Item { v, w, origin: vec![(i, j)] }).collect(),
            })
            .collect();
        Ok(KnapsackInstance { classes, v_cap, w_cap })
    }

    /// Unchecked; may have zero classes. Used for reduced instances.
    pub(crate) fn from_classes(classes: Vec<ItemClass<T>>, v_cap: T, w_cap: T) -> Self {
        KnapsackInstance { classes, v_cap, w_cap }
    }

    pub fn classes(&self) -> &[ItemClass<T>] {
        &self.classes
    }

    /// Number of classes `n`.
    pub fn n(&self) -> usize {
        self.classes.len()
    }

    /// Total number of items `N`.
    pub fn total_items(&self) -> usize {
        self.classes.iter().map(ItemClass::len).sum()
    }

    /// Largest class size `λ`.
    pub fn lambda(&self) -> usize {
        self.classes.iter().map(ItemClass::len).max().unwrap_or(0)
    }

    pub fn v_cap(&self) -> T {
        self.v_cap
    }

    pub fn w_cap(&self) -> T {
        self.w_cap
    }

    /// The instance with values and weights exchanged.
    pub fn swapped(&self) -> Self {
        let classes = self
            .classes
            .iter()
            .map(|c| ItemClass {
                items: c.items.iter().map(|x| Item { v: x.w, w: x.v, origin: x.origin.clone() }).collect(),
            })
            .collect();
        KnapsackInstance { classes, v_cap: self.w_cap, w_cap: self.v_cap }
    }

    /// Number of choices `Π|C_i|`, saturating.
    pub fn choice_count(&self) -> u128 {
        self.classes.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// Value and weight sums of a choice.
    pub fn sums(&self, choice: &Choice) -> Result<(T, T)> {
        if choice.picks.len() != self.n() {
            return domain(format!("choice has {} picks for {} classes", choice.picks.len(), self.n()));
        }
        let (mut v, mut w) = (T::zero(), T::zero());
        for (i, &j) in choice.picks.iter().enumerate() {
            let Some(item) = self.classes[i].items.get(j) else {
                return domain(format!("class {} has no item {}", i + 1, j + 1));
            };
            v = v + item.v;
            w = w + item.w;
        }
        Ok((v, w))
    }

    /// Whether `choice` is a valid choice meeting both thresholds.
    pub fn is_feasible(&self, choice: &Choice) -> bool {
        matches!(self.sums(choice), Ok((v, w)) if v <= self.v_cap && w <= self.w_cap)
    }
}

/// One 0-based item index per class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Choice {
    pub picks: Vec<usize>,
}

/// At most one item from each class of its domain, with cached sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialChoice<T> {
    picks: Vec<(usize, usize)>,
    v_sum: T,
    w_sum: T,
}

impl<T: Scalar> PartialChoice<T> {
    /// From `(class, item)` pairs with distinct classes.
    pub fn new(inst: &KnapsackInstance<T>, mut picks: Vec<(usize, usize)>) -> Result<Self> {
        picks.sort_unstable();
        if picks.windows(2).any(|p| p[0].0 == p[1].0) {
            return domain("partial choice picks a class twice");
        }
        let (mut v_sum, mut w_sum) = (T::zero(), T::zero());
        for &(i, j) in &picks {
            let Some(item) = inst.classes.get(i).and_then(|c| c.items.get(j)) else {
                return domain(format!("no item {} in class {}", j + 1, i + 1));
            };
            v_sum = v_sum + item.v;
            w_sum = w_sum + item.w;
        }
        Ok(PartialChoice { picks, v_sum, w_sum })
    }

    pub fn picks(&self) -> &[(usize, usize)] {
        &self.picks
    }

    /// Class indices of the domain, ascending.
    pub fn domain(&self) -> Vec<usize> {
        self.picks.iter().map(|&(i, _)| i).collect()
    }

    pub fn v(&self) -> T {
        self.v_sum
    }

    pub fn w(&self) -> T {
        self.w_sum
    }
}

/// The example from the module tests: two classes of two items.
#[cfg(test)]
pub(crate) fn small_example() -> KnapsackInstance<i64> {
    KnapsackInstance::new(vec![vec![(1, 5), (3, 1)], vec![(2, 2), (4, 0)]], 5, 3).unwrap()
}
