//! Exhaustive generation of permutations, signed permutations and
//! k-Stirling permutations.
//!
//! Every generator is a pure function of its size parameters and yields in
//! a fixed order. Sizes are guarded by [`Limits`] so that a typo on the
//! command line cannot start a multi-hour enumeration.

use std::fmt;
use std::str::FromStr;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Vec<usize>);

/// Signed permutation; absolute values form a permutation of `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPerm(Vec<i64>);

/// A word over `{1^k, ..., n^k}` with the Stirling condition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StirlingWord {
    word: Vec<usize>,
    k: usize,
}

/// Standard cycle form: smallest entry first in each cycle, cycles sorted by
/// their first entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleForm(pub Vec<Vec<usize>>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("{what} would produce about {estimate} objects, over the limit of {limit}; raise it with {flag}")]
    GuardExceeded { what: String, estimate: u128, limit: u128, flag: &'static str },
    #[error("invalid object: {0}")]
    Invalid(String),
}

/// Size guards for the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_perm_n: usize,
    pub max_signed_n: usize,
    pub max_stirling_count: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_perm_n: 10, max_signed_n: 8, max_stirling_count: 5_000_000 }
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn perm_count(n: usize) -> u128 {
    factorial(n)
}

pub fn signed_count(n: usize) -> u128 {
    factorial(n) << n
}

/// `prod_{m=1}^{n} (k(m-1) + 1)`.
pub fn stirling_count(n: usize, k: usize) -> u128 {
    (1..=n).map(|m| (k * (m - 1) + 1) as u128).product()
}

impl Perm {
    /// # Panics
    /// If `one_line` is not a permutation of `1..=n`.
    pub fn new(one_line: Vec<usize>) -> Self {
        Self::try_new(one_line).expect("not a permutation")
    }

    pub fn try_new(one_line: Vec<usize>) -> Result<Self, GenError> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(GenError::Invalid(format!("{one_line:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        Ok(Perm(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `pi(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }
}

/// Accepts `3652147` (single digits) or whitespace/comma separated values.
impl FromStr for Perm {
    type Err = GenError;
    fn from_str(s: &str) -> Result<Self, GenError> {
        Perm::try_new(parse_word(s)?)
    }
}

fn parse_word(s: &str) -> Result<Vec<usize>, GenError> {
    let t = s.trim();
    let bad = || GenError::Invalid(format!("cannot read `{s}` as a word"));
    if t.contains(|c: char| c.is_whitespace() || c == ',') {
        t.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|p| !p.is_empty())
            .map(|p| p.parse().map_err(|_| bad()))
            .collect()
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

fn write_word<T: fmt::Display>(f: &mut fmt::Formatter<'_>, w: &[T], wide: bool) -> fmt::Result {
    let sep = if wide { " " } else { "" };
    for (i, v) in w.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0, self.0.len() > 9)
    }
}

impl SignedPerm {
    pub fn new(values: Vec<i64>) -> Self {
        let abs: Vec<usize> = values.iter().map(|v| v.unsigned_abs() as usize).collect();
        Perm::try_new(abs).expect("absolute values must form a permutation");
        SignedPerm(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0, true)
    }
}

/// Everything between two equal letters is at least that letter.
pub fn is_stirling(word: &[usize]) -> bool {
    // equivalently: no pattern a..b..a with b < a
    for (i, &a) in word.iter().enumerate() {
        let Some(last) = word.iter().rposition(|&c| c == a) else { continue };
        if word[i..last].iter().any(|&b| b < a) {
            return false;
        }
    }
    true
}

impl StirlingWord {
    pub fn new(word: Vec<usize>, k: usize) -> Result<Self, GenError> {
        if k == 0 || word.len() % k != 0 {
            return Err(GenError::Invalid(format!("length {} is not a multiple of k = {k}", word.len())));
        }
        let n = word.len() / k;
        let mut counts = vec![0usize; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(GenError::Invalid(format!("letter {v} outside 1..={n}")));
            }
            counts[v] += 1;
        }
        if counts[1..].iter().any(|&c| c != k) {
            return Err(GenError::Invalid(format!("every letter must appear exactly {k} times")));
        }
        if !is_stirling(&word) {
            return Err(GenError::Invalid("Stirling condition fails".into()));
        }
        Ok(StirlingWord { word, k })
    }

    pub fn parse(s: &str, k: usize) -> Result<Self, GenError> {
        Self::new(parse_word(s)?, k)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.word
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of distinct letters.
    pub fn n(&self) -> usize {
        self.word.len() / self.k
    }
}

impl fmt::Display for StirlingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word, self.n() > 9)
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            f.write_str("(")?;
            for (i, v) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn cycle_form(p: &Perm) -> CycleForm {
    let n = p.len();
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            c.push(v);
            v = p.at(v);
        }
        cycles.push(c);
    }
    CycleForm(cycles)
}

/// Lexicographic successor in place; `false` once the last permutation is passed.
pub fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn guard(what: String, estimate: u128, limit: u128, flag: &'static str) -> Result<(), GenError> {
    if estimate > limit {
        Err(GenError::GuardExceeded { what, estimate, limit, flag })
    } else {
        Ok(())
    }
}

/// All of `S_n` in lexicographic order.
pub struct PermIter {
    cur: Vec<usize>,
    done: bool,
}

impl Iterator for PermIter {
    type Item = Perm;
    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let out = Perm(self.cur.clone());
        self.done = !next_permutation(&mut self.cur);
        Some(out)
    }
}

pub fn gen_perms(n: usize, limits: &Limits) -> Result<PermIter, GenError> {
    if n > limits.max_perm_n {
        guard(format!("S_{n}"), perm_count(n), perm_count(limits.max_perm_n), "--max-perm-n")?;
    }
    Ok(PermIter { cur: (1..=n).collect(), done: false })
}

/// Visits every permutation of `S_n` through one reused buffer.
pub fn for_each_perm(n: usize, limits: &Limits, mut f: impl FnMut(&[usize])) -> Result<(), GenError> {
    gen_perms(n, limits)?;
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        f(&cur);
        if !next_permutation(&mut cur) {
            return Ok(());
        }
    }
}

/// All of `B_n`: each permutation in lexicographic order, then sign patterns
/// by binary counter (bit `i` negates position `i`).
pub fn gen_signed_perms(n: usize, limits: &Limits) -> Result<impl Iterator<Item = SignedPerm>, GenError> {
    if n > limits.max_signed_n {
        guard(format!("B_{n}"), signed_count(n), signed_count(limits.max_signed_n), "--max-signed-n")?;
    }
    let perms = PermIter { cur: (1..=n).collect(), done: false };
    Ok(perms.flat_map(move |p| {
        (0u64..1 << n).map(move |mask| {
            SignedPerm(
                p.0.iter()
                    .enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i64) } else { v as i64 })
                    .collect(),
            )
        })
    }))
}

/// All of `Q_n^{(k)}` by block insertion.
///
/// Step `m` inserts `m^k` into one of the `k(m-1)+1` gaps of the current
/// word. The gap choices run as an odometer with the last step fastest and
/// gaps ascending.
pub struct StirlingIter {
    n: usize,
    k: usize,
    gaps: Vec<usize>,
    done: bool,
}

impl StirlingIter {
    fn build(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.n * self.k);
        for (idx, &g) in self.gaps.iter().enumerate() {
            let m = idx + 1;
            w.splice(g..g, std::iter::repeat(m).take(self.k));
        }
        w
    }
}

impl Iterator for StirlingIter {
    type Item = StirlingWord;
    fn next(&mut self) -> Option<StirlingWord> {
        if self.done {
            return None;
        }
        let out = StirlingWord { word: self.build(), k: self.k };
        // advance the odometer
        let mut idx = self.n;
        loop {
            if idx == 0 {
                self.done = true;
                break;
            }
            idx -= 1;
            let max_gap = self.k * idx;
            if self.gaps[idx] < max_gap {
                self.gaps[idx] += 1;
                break;
            }
            self.gaps[idx] = 0;
        }
        Some(out)
    }
}

pub fn gen_stirling(n: usize, k: usize, limits: &Limits) -> Result<StirlingIter, GenError> {
    if k == 0 {
        return Err(GenError::Invalid("k must be at least 1".into()));
    }
    let count = stirling_count(n, k);
    guard(format!("Q_{n}^({k})"), count, limits.max_stirling_count, "--max-stirling")?;
    Ok(StirlingIter { n, k, gaps: vec![0; n], done: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn perm_counts() {
        let all: Vec<Perm> = gen_perms(0, &lim()).unwrap().collect();
        assert_eq!(all, vec![Perm(vec![])]);
        assert_eq!(gen_perms(3, &lim()).unwrap().count(), 6);
        let five: BTreeSet<Perm> = gen_perms(5, &lim()).unwrap().collect();
        assert_eq!(five.len(), 120);
        let first: Vec<String> = gen_perms(3, &lim()).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(first, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn guards() {
        let err = gen_perms(11, &lim()).err().unwrap();
        assert_eq!(
            err.to_string(),
            "S_11 would produce about 39916800 objects, over the limit of 3628800; raise it with --max-perm-n"
        );
        assert!(gen_signed_perms(9, &lim()).is_err());
        assert!(gen_stirling(8, 2, &lim()).is_ok());
        assert!(gen_stirling(9, 2, &lim()).is_err());
        let wide = Limits { max_perm_n: 11, ..lim() };
        assert!(gen_perms(11, &wide).is_ok());
    }

    #[test]
    fn signed() {
        let one: Vec<String> = gen_signed_perms(1, &lim()).unwrap().map(|s| s.to_string()).collect();
        assert_eq!(one, ["1", "-1"]);
        assert_eq!(gen_signed_perms(2, &lim()).unwrap().count(), 8);
        let four: BTreeSet<SignedPerm> = gen_signed_perms(4, &lim()).unwrap().collect();
        assert_eq!(four.len(), 384);
    }

    #[test]
    fn stirling_small() {
        let w: BTreeSet<String> = gen_stirling(2, 2, &lim()).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(w, ["1122", "1221", "2211"].iter().map(|s| s.to_string()).collect());
        assert_eq!(gen_stirling(3, 2, &lim()).unwrap().count(), 15);
        assert_eq!(gen_stirling(3, 3, &lim()).unwrap().count(), 28);
        assert_eq!(gen_stirling(0, 2, &lim()).unwrap().count(), 1);
    }

    /// Filters all multiset permutations by the Stirling condition.
    fn stirling_oracle(n: usize, k: usize) -> BTreeSet<Vec<usize>> {
        let mut w: Vec<usize> = (1..=n).flat_map(|m| std::iter::repeat(m).take(k)).collect();
        let mut out = BTreeSet::new();
        loop {
            if is_stirling_oracle(&w) {
                out.insert(w.clone());
            }
            if !next_permutation(&mut w) {
                break;
            }
        }
        out
    }

    fn is_stirling_oracle(w: &[usize]) -> bool {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] == w[j] && (i + 1..j).any(|s| w[s] < w[i]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn stirling_against_filter() {
        for k in 1..=3 {
            for n in 0..=4 {
                let got: Vec<Vec<usize>> = gen_stirling(n, k, &lim()).unwrap().map(|w| w.word).collect();
                let set: BTreeSet<Vec<usize>> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len(), "duplicates at n={n} k={k}");
                assert_eq!(got.len() as u128, stirling_count(n, k));
                assert_eq!(set, stirling_oracle(n, k), "n={n} k={k}");
                assert!(got.iter().all(|w| is_stirling_oracle(w)));
            }
        }
    }

    #[test]
    fn k1_words_are_perms() {
        for n in 0..=6 {
            let words: BTreeSet<Vec<usize>> = gen_stirling(n, 1, &lim()).unwrap().map(|w| w.word).collect();
            let perms: BTreeSet<Vec<usize>> = gen_perms(n, &lim()).unwrap().map(|p| p.0).collect();
            assert_eq!(words, perms);
        }
        // (2n-1)!! for k = 2
        assert_eq!(stirling_count(5, 2), 945);
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_form(&Perm::identity(3)).to_string(), "(1)(2)(3)");
        assert_eq!(cycle_form(&"2413".parse().unwrap()).0, vec![vec![1, 2, 4, 3]]);
        assert_eq!(cycle_form(&"3652147".parse().unwrap()).to_string(), "(1,3,5)(2,6,4)(7)");
    }

    #[test]
    fn cycle_form_is_standard() {
        for p in gen_perms(6, &lim()).unwrap() {
            let c = cycle_form(&p);
            let firsts: Vec<usize> = c.0.iter().map(|c| c[0]).collect();
            assert!(firsts.windows(2).all(|w| w[0] < w[1]));
            assert!(c.0.iter().all(|cy| cy.iter().all(|&v| v >= cy[0])));
            let mut all: Vec<usize> = c.0.concat();
            all.sort();
            assert_eq!(all, (1..=6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn parsing() {
        assert!("1 2 3".parse::<Perm>().is_ok());
        assert!("122".parse::<Perm>().is_err());
        assert!(StirlingWord::parse("1221", 2).is_ok());
        assert!(StirlingWord::parse("1212", 2).is_err());
        assert!(StirlingWord::parse("11245547723366", 2).is_ok());
    }
}
