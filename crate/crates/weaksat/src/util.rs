//! Small combinatorial helpers shared across modules.

/// Advances `arr` to its next lexicographic permutation, returning `false`
/// once the last permutation has been reached. Handles repeated values, so
/// starting from a sorted slice enumerates each distinct rearrangement once.
pub(crate) fn next_permutation<T: Ord>(arr: &mut [T]) -> bool {
    let n = arr.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Iterator over the k-element subsets of `pool`, as sorted index selections
/// in lexicographic order.
pub(crate) struct Combinations<'a, T: Copy> {
    pool: &'a [T],
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

pub(crate) fn combinations<T: Copy>(pool: &[T], k: usize) -> Combinations<'_, T> {
    Combinations {
        pool,
        idx: (0..k).collect(),
        started: false,
        done: k > pool.len(),
    }
}

impl<T: Copy> Iterator for Combinations<'_, T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.done {
            return None;
        }
        if self.started {
            let k = self.idx.len();
            let n = self.pool.len();
            // rightmost index that can still move
            let mut i = k;
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                if self.idx[i] < n - (k - i) {
                    self.idx[i] += 1;
                    for j in i + 1..k {
                        self.idx[j] = self.idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        self.started = true;
        Some(self.idx.iter().map(|&i| self.pool[i]).collect())
    }
}

/// True when the ascending sort of `values` is dominated pointwise by the
/// ascending sort of `caps`. This is the matching criterion used everywhere a
/// permutation `pi` with `values[i] <= caps[pi(i)]` has to exist.
pub(crate) fn sorted_dominated(values: &[usize], caps: &[usize]) -> bool {
    debug_assert_eq!(values.len(), caps.len());
    let mut v = values.to_vec();
    let mut c = caps.to_vec();
    v.sort_unstable();
    c.sort_unstable();
    v.iter().zip(c.iter()).all(|(a, b)| a <= b)
}
