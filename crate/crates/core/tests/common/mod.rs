//! Slow, definition-by-definition versions of the statistics, written
//! without reference to the library code.

#![allow(dead_code)]

/// `pi` in one-line notation over `1..=n`.
pub struct Naive<'a>(pub &'a [usize]);

impl Naive<'_> {
    fn n(&self) -> usize {
        self.0.len()
    }

    /// `pi(i)` with `pi(0) = pi(n+1) = 0`.
    fn at(&self, i: usize) -> usize {
        if i == 0 || i > self.n() { 0 } else { self.0[i - 1] }
    }

    fn count(&self, f: impl Fn(usize) -> bool) -> u32 {
        (1..=self.n()).filter(|&i| f(i)).count() as u32
    }

    fn smaller_all_left(&self, i: usize) -> bool {
        (1..=self.n()).all(|j| self.at(j) >= self.at(i) || j < i)
    }

    fn smaller_all_right(&self, i: usize) -> bool {
        (1..=self.n()).all(|j| self.at(j) >= self.at(i) || j > i)
    }

    pub fn des(&self) -> u32 {
        self.count(|i| self.at(i) > self.at(i + 1))
    }
    pub fn asc(&self) -> u32 {
        self.count(|i| self.at(i - 1) < self.at(i))
    }
    pub fn des_star(&self) -> u32 {
        self.count(|i| i < self.n() && self.at(i) > self.at(i + 1))
    }
    pub fn asc_star(&self) -> u32 {
        self.count(|i| i > 1 && self.at(i - 1) < self.at(i))
    }
    pub fn exc(&self) -> u32 {
        self.count(|i| self.at(i) > i)
    }
    pub fn drop(&self) -> u32 {
        self.count(|i| self.at(i) < i)
    }
    pub fn fix(&self) -> u32 {
        self.count(|i| self.at(i) == i)
    }
    pub fn cyc(&self) -> u32 {
        // count cycle leaders: the smallest element of each cycle
        self.count(|i| {
            let mut v = self.at(i);
            while v != i {
                if v < i {
                    return false;
                }
                v = self.at(v);
            }
            true
        })
    }
    pub fn lrmin(&self) -> u32 {
        self.count(|i| (1..i).all(|j| self.at(j) > self.at(i)))
    }
    pub fn rlmin(&self) -> u32 {
        self.count(|i| (i + 1..=self.n()).all(|j| self.at(j) > self.at(i)))
    }
    pub fn lrmax(&self) -> u32 {
        self.count(|i| (1..i).all(|j| self.at(j) < self.at(i)))
    }
    pub fn rlmax(&self) -> u32 {
        self.count(|i| (i + 1..=self.n()).all(|j| self.at(j) < self.at(i)))
    }
    pub fn pk(&self) -> u32 {
        self.count(|i| self.at(i - 1) < self.at(i) && self.at(i) > self.at(i + 1))
    }
    pub fn val(&self) -> u32 {
        self.count(|i| self.at(i - 1) > self.at(i) && self.at(i) < self.at(i + 1))
    }
    pub fn dasc(&self) -> u32 {
        self.count(|i| self.at(i - 1) < self.at(i) && self.at(i) < self.at(i + 1))
    }
    pub fn ddes(&self) -> u32 {
        self.count(|i| self.at(i - 1) > self.at(i) && self.at(i) > self.at(i + 1))
    }
    pub fn pasc(&self) -> u32 {
        self.count(|i| i > 1 && self.at(i - 1) < self.at(i) && self.smaller_all_left(i))
    }
    pub fn pdes(&self) -> u32 {
        self.count(|i| i < self.n() && self.at(i) > self.at(i + 1) && self.smaller_all_right(i))
    }
    pub fn pasc_hat(&self) -> u32 {
        self.count(|i| self.at(i - 1) < self.at(i) && self.smaller_all_left(i))
    }
}

/// `w` a k-Stirling permutation, `w_0 = 0`.
pub struct NaiveWord<'a>(pub &'a [usize], pub usize);

impl NaiveWord<'_> {
    fn at(&self, i: usize) -> usize {
        if i == 0 || i > self.0.len() { 0 } else { self.0[i - 1] }
    }

    fn plateau(&self, i: usize) -> bool {
        let k = self.1;
        i + k - 1 <= self.0.len() && self.at(i - 1) < self.at(i) && (i..i + k).all(|j| self.at(j) == self.at(i))
    }

    fn lap_positions(&self) -> Vec<usize> {
        (1..=self.0.len()).filter(|&i| self.plateau(i)).collect()
    }

    pub fn lap(&self) -> u32 {
        self.lap_positions().len() as u32
    }
    pub fn ap(&self) -> u32 {
        self.lap_positions().into_iter().filter(|&i| i > 1).count() as u32
    }
    /// Plateau values whose smaller letters all sit to their left.
    pub fn proper_values(&self) -> Vec<usize> {
        self.lap_positions()
            .into_iter()
            .filter(|&i| (1..=self.0.len()).all(|j| self.at(j) >= self.at(i) || j < i))
            .map(|i| self.at(i))
            .collect()
    }
    pub fn plap(&self) -> u32 {
        self.proper_values().len() as u32
    }
    pub fn ap2(&self) -> u32 {
        (2..self.0.len()).filter(|&i| self.at(i - 1) < self.at(i) && self.at(i) == self.at(i + 1)).count() as u32
    }
}

/// Every k-Stirling permutation of `[n]`, by filtering all words with `k`
/// copies of each letter.
pub fn stirling_by_filter(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut left = vec![k; n + 1];
    fn go(n: usize, cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, len: usize) {
        if cur.len() == len {
            let ok = (1..=n).all(|a| {
                let first = cur.iter().position(|&c| c == a).unwrap();
                let last = cur.iter().rposition(|&c| c == a).unwrap();
                cur[first..=last].iter().all(|&b| b >= a)
            });
            if ok {
                out.push(cur.clone());
            }
            return;
        }
        for a in 1..=n {
            if left[a] > 0 {
                left[a] -= 1;
                cur.push(a);
                go(n, cur, left, out, len);
                cur.pop();
                left[a] += 1;
            }
        }
    }
    go(n, &mut cur, &mut left, &mut out, n * k);
    out
}

/// All permutations of `1..=n` by recursive swapping.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(a: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == a.len() {
            out.push(a.clone());
            return;
        }
        for i in k..a.len() {
            a.swap(k, i);
            go(a, k + 1, out);
            a.swap(k, i);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=n).collect(), 0, &mut out);
    out
}
