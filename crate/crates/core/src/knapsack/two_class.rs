use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Finds `(i, j)` with `c1[i] + c2[j]` within both thresholds. Both lists
/// must be sorted by non-decreasing value.
pub fn solve_two_class<T: Scalar>(c1: &[(T, T)], c2: &[(T, T)], v_cap: T, w_cap: T) -> Result<Option<(usize, usize)>> {
    if c1.windows(2).any(|p| p[0].0 > p[1].0) || c2.windows(2).any(|p| p[0].0 > p[1].0) {
        return domain("two-class input is not sorted by value");
    }
    Ok(two_class_sorted(c1, c2, v_cap, w_cap))
}

pub(crate) fn two_class_sorted<T: Scalar>(c1: &[(T, T)], c2: &[(T, T)], v_cap: T, w_cap: T) -> Option<(usize, usize)> {
    if c2.is_empty() {
        return None;
    }
    // best[k]: index of the lightest element among c2[..=k]; the rest are
    // dominated for any value budget that admits c2[k].
    let mut best: Vec<usize> = Vec::with_capacity(c2.len());
    for k in 0..c2.len() {
        let b = match best.last() {
            Some(&b) if c2[b].1 <= c2[k].1 => b,
            _ => k,
        };
        best.push(b);
    }
    let (v_cap, w_cap) = (v_cap.widen(), w_cap.widen());
    let mut top = c2.len();
    for (i, &(v1, w1)) in c1.iter().enumerate() {
        let budget = v_cap - v1.widen();
        while top > 0 && c2[top - 1].0.widen() > budget {
            top -= 1;
        }
        if top == 0 {
            break;
        }
        let j = best[top - 1];
        if w1.widen() + c2[j].1.widen() <= w_cap {
            return Some((i, j));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let c1 = [(1i64, 5i64), (3, 1)];
        let c2 = [(2i64, 2i64), (4, 0)];
        assert_eq!(solve_two_class(&c1, &c2, 5, 3).unwrap(), Some((1, 0)));
        assert_eq!(solve_two_class(&c1, &c2, 2, 100).unwrap(), None);
        assert_eq!(solve_two_class(&[(1i64, 1i64)], &[(2, 2)], 3, 3).unwrap(), Some((0, 0)));
        assert!(solve_two_class(&[(3i64, 0i64), (1, 0)], &c2, 5, 5).is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_pairing(
            mut a in prop::collection::vec((-20i64..20, -20i64..20), 0..12),
            mut b in prop::collection::vec((-20i64..20, -20i64..20), 0..12),
            v in -30i64..30, w in -30i64..30,
        ) {
            a.sort_by_key(|x| x.0);
            b.sort_by_key(|x| x.0);
            let expected = a.iter().any(|x| b.iter().any(|y| x.0 + y.0 <= v && x.1 + y.1 <= w));
            let got = solve_two_class(&a, &b, v, w).unwrap();
            prop_assert_eq!(got.is_some(), expected);
            if let Some((i, j)) = got {
                prop_assert!(a[i].0 + b[j].0 <= v && a[i].1 + b[j].1 <= w);
            }
        }
    }
}
