//! Online generation of the value-sorted lists of partial choices over the
//! prefixes `{1..j}` of a class order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::scalar::Scalar;

const ROOT: u32 = u32::MAX;

/// One partial choice: the list element it extends, the item it adds and
/// its sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry<T> {
    pub parent: u32,
    pub item: u32,
    pub v: T,
    pub w: T,
}

/// Heap key: value, then item index, then position in the parent list.
type Key<T> = Reverse<(T, u32, u32)>;

/// Lists `L_0, …, L_n` over classes given in generation order. After `i`
/// steps list `j` holds the `min(i, |L_j|)` smallest partial choices over the
/// first `j` classes.
#[derive(Debug, Clone)]
pub struct PrefixGenerator<T> {
    classes: Vec<Vec<(T, T)>>,
    lists: Vec<Vec<Entry<T>>>,
    heaps: Vec<BinaryHeap<Key<T>>>,
    /// Iterators pointing one past the current end of the parent list.
    pending: Vec<Vec<(u32, u32)>>,
    complete: Vec<bool>,
    steps: usize,
}

impl<T: Scalar> PrefixGenerator<T> {
    pub fn new(classes: Vec<Vec<(T, T)>>) -> Self {
        let n = classes.len();
        let root = Entry { parent: ROOT, item: ROOT, v: T::zero(), w: T::zero() };
        let mut lists = vec![Vec::new(); n + 1];
        lists[0].push(root);
        let mut heaps = vec![BinaryHeap::new(); n + 1];
        let mut pending = vec![Vec::new(); n + 1];
        let mut complete = vec![false; n + 1];
        complete[0] = true;
        for t in 1..=n {
            let class = &classes[t - 1];
            if t == 1 {
                heaps[1] = class.iter().enumerate().map(|(k, &(v, _))| Reverse((v, k as u32, 0))).collect();
            } else {
                pending[t] = (0..class.len() as u32).map(|k| (k, 0)).collect();
            }
            complete[t] = complete[t - 1] && heaps[t].is_empty() && pending[t].is_empty();
        }
        PrefixGenerator { classes, lists, heaps, pending, complete, steps: 0 }
    }

    pub fn n(&self) -> usize {
        self.classes.len()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Extends every unfinished list by one element; a no-op once all lists
    /// are complete.
    pub fn step(&mut self) {
        let n = self.n();
        if self.complete[n] {
            return;
        }
        for t in 1..=n {
            if self.complete[t] {
                continue;
            }
            let (before, after) = self.lists.split_at_mut(t);
            let prev = &before[t - 1];
            let cur = &mut after[0];
            let prev_done = self.complete[t - 1];
            let class = &self.classes[t - 1];
            let heap = &mut self.heaps[t];
            self.pending[t].retain(|&(k, ptr)| {
                if (ptr as usize) < prev.len() {
                    heap.push(Reverse((prev[ptr as usize].v + class[k as usize].0, k, ptr)));
                    false
                } else {
                    !prev_done
                }
            });
            if let Some(Reverse((v, k, ptr))) = heap.pop() {
                let (_, w) = class[k as usize];
                cur.push(Entry { parent: ptr, item: k, v, w: prev[ptr as usize].w + w });
                let next = ptr + 1;
                if (next as usize) < prev.len() {
                    heap.push(Reverse((prev[next as usize].v + class[k as usize].0, k, next)));
                } else if !prev_done {
                    self.pending[t].push((k, next));
                }
            }
            self.complete[t] = prev_done && heap.is_empty() && self.pending[t].is_empty();
        }
        self.steps += 1;
    }

    /// Steps until `steps` have been taken.
    pub fn advance_to(&mut self, steps: usize) {
        while self.steps < steps && !self.complete[self.n()] {
            self.step();
        }
        self.steps = self.steps.max(steps);
    }

    /// The generated prefix of list `t`.
    pub fn list(&self, t: usize) -> &[Entry<T>] {
        &self.lists[t]
    }

    /// Value of the 0-based `pos`-th element of list `t`, if generated.
    pub fn value(&self, t: usize, pos: usize) -> Option<T> {
        self.lists[t].get(pos).map(|e| e.v)
    }

    pub fn is_complete(&self, t: usize) -> bool {
        self.complete[t]
    }

    /// Item indices, one per class `1..=t`, of element `pos` of list `t`.
    pub fn picks(&self, t: usize, pos: usize) -> Vec<usize> {
        let mut out = vec![0; t];
        let mut pos = pos as u32;
        for level in (1..=t).rev() {
            let e = self.lists[level][pos as usize];
            out[level - 1] = e.item as usize;
            pos = e.parent;
        }
        out
    }
}
