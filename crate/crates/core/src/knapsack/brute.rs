//! Exhaustive oracles over all choices.

use super::{Choice, KnapsackInstance, PartialChoice};
use crate::capacity;
use crate::error::Result;
use crate::scalar::Scalar;

/// Visits index vectors in lexicographic order until `f` returns true.
fn odometer(sizes: &[usize], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if sizes.contains(&0) {
        return false;
    }
    let mut idx = vec![0; sizes.len()];
    loop {
        if f(&idx) {
            return true;
        }
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn guard<T: Scalar>(inst: &KnapsackInstance<T>) -> Result<()> {
    capacity::check("knapsack choices", inst.choice_count(), capacity::ENUMERATION_LIMIT)
}

fn sizes<T: Scalar>(inst: &KnapsackInstance<T>) -> Vec<usize> {
    inst.classes().iter().map(|c| c.len()).collect()
}

fn sums<T: Scalar>(inst: &KnapsackInstance<T>, picks: &[usize]) -> (T, T) {
    picks.iter().enumerate().fold((T::zero(), T::zero()), |(v, w), (i, &j)| {
        let c = &inst.classes()[i].items[j];
        (v + c.v, w + c.w)
    })
}

/// First feasible choice in lexicographic order of pick indices.
pub fn brute_force<T: Scalar>(inst: &KnapsackInstance<T>) -> Result<Option<Choice>> {
    guard(inst)?;
    let mut found = None;
    odometer(&sizes(inst), |idx| {
        let (v, w) = sums(inst, idx);
        if v <= inst.v_cap() && w <= inst.w_cap() {
            found = Some(Choice { picks: idx.to_vec() });
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// `A_V` and `A_W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibleCounts {
    pub a_v: u128,
    pub a_w: u128,
}

impl FeasibleCounts {
    pub fn max(&self) -> u128 {
        self.a_v.max(self.a_w)
    }

    pub fn min(&self) -> u128 {
        self.a_v.min(self.a_w)
    }
}

pub fn count_feasible<T: Scalar>(inst: &KnapsackInstance<T>) -> Result<FeasibleCounts> {
    guard(inst)?;
    let mut counts = FeasibleCounts { a_v: 0, a_w: 0 };
    odometer(&sizes(inst), |idx| {
        let (v, w) = sums(inst, idx);
        counts.a_v += (v <= inst.v_cap()) as u128;
        counts.a_w += (w <= inst.w_cap()) as u128;
        false
    });
    Ok(counts)
}

fn rank_by<T: Scalar>(s: &PartialChoice<T>, inst: &KnapsackInstance<T>, key: fn(&super::Item<T>) -> T) -> Result<u128> {
    let domain = s.domain();
    let total = domain.iter().fold(1u128, |acc, &i| acc.saturating_mul(inst.classes()[i].len() as u128));
    capacity::check("partial choices", total, capacity::ENUMERATION_LIMIT)?;
    let target = s.picks().iter().fold(T::zero(), |acc, &(i, j)| acc + key(&inst.classes()[i].items[j]));
    let dom_sizes: Vec<usize> = domain.iter().map(|&i| inst.classes()[i].len()).collect();
    let mut rank = 0u128;
    odometer(&dom_sizes, |idx| {
        let sum = idx.iter().zip(&domain).fold(T::zero(), |acc, (&j, &i)| acc + key(&inst.classes()[i].items[j]));
        rank += (sum <= target) as u128;
        false
    });
    Ok(rank)
}

/// Partial choices over the same domain with value sum at most `v(S)`.
pub fn rank_v<T: Scalar>(s: &PartialChoice<T>, inst: &KnapsackInstance<T>) -> Result<u128> {
    rank_by(s, inst, |c| c.v)
}

pub fn rank_w<T: Scalar>(s: &PartialChoice<T>, inst: &KnapsackInstance<T>) -> Result<u128> {
    rank_by(s, inst, |c| c.w)
}
