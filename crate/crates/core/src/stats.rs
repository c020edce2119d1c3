//! Statistics on permutations, k-Stirling permutations and signed
//! permutations.
//!
//! Boundary convention: `pi(0) = pi(n+1) = 0` and `sigma_0 = sigma_{kn+1} = 0`.
//! "All smaller values lie to the left (right)" predicates are decided from
//! a value-to-position table built once per object.

use std::fmt;
use std::str::FromStr;

macro_rules! record {
    (
        $(#[$meta:meta])*
        $record:ident, $field:ident { $($name:ident => $variant:ident),* $(,)? }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
        pub struct $record {
            $(pub $name: u32,)*
        }

        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $field {
            $($variant,)*
        }

        impl $field {
            pub const ALL: &'static [$field] = &[$($field::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $($field::$variant => stringify!($name),)*
                }
            }
        }

        impl fmt::Display for $field {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $field {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                $field::ALL
                    .iter()
                    .copied()
                    .find(|f| f.name() == s)
                    .ok_or_else(|| format!("unknown statistic `{s}`"))
            }
        }

        impl $record {
            pub fn get(&self, f: $field) -> u32 {
                match f {
                    $($field::$variant => self.$name,)*
                }
            }

            fn get_mut(&mut self, f: $field) -> &mut u32 {
                match f {
                    $($field::$variant => &mut self.$name,)*
                }
            }
        }
    };
}

record! {
    /// Every permutation statistic, evaluated together.
    PermStatRecord, PermField {
        des => Des, asc => Asc, des_star => DesStar, asc_star => AscStar,
        exc => Exc, drop => Drop, fix => Fix, cyc => Cyc,
        lrmin => Lrmin, rlmin => Rlmin, lrmax => Lrmax, rlmax => Rlmax,
        pk => Pk, val => Val, dasc => Dasc, ddes => Ddes,
        pasc => Pasc, pdes => Pdes, impasc => Impasc, impdes => Impdes,
        pasc_hat => PascHat, impasc_hat => ImpascHat,
    }
}

record! {
    /// Statistics on one k-Stirling permutation.
    StirlingStatRecord, WordField {
        ap => Ap, lap => Lap, ap2 => Ap2, plap => Plap, implap => Implap,
        lrmin => Lrmin, rlmin => Rlmin,
    }
}

/// Statistics on one signed permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SignedStatRecord {
    pub des_b: u32,
}

/// Deliberately corrupts one statistic by adding 1 to it.
///
/// Exists only so the identity suite can demonstrate that it notices a
/// broken implementation; normal evaluation passes `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    Perm(PermField),
    Word(WordField),
    SignedDesB,
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::Perm(p) => write!(f, "perm.{p}"),
            Mutation::Word(w) => write!(f, "word.{w}"),
            Mutation::SignedDesB => f.write_str("signed.des_b"),
        }
    }
}

impl Mutation {
    /// Every single-field corruption.
    pub fn all() -> Vec<Mutation> {
        let mut out: Vec<Mutation> = PermField::ALL.iter().map(|&f| Mutation::Perm(f)).collect();
        out.extend(WordField::ALL.iter().map(|&f| Mutation::Word(f)));
        out.push(Mutation::SignedDesB);
        out
    }
}

/// Statistics of `pi` given in one-line notation over `1..=n`.
pub fn perm_stats(pi: &[usize]) -> PermStatRecord {
    perm_stats_with(pi, None)
}

pub fn perm_stats_with(pi: &[usize], mutation: Option<Mutation>) -> PermStatRecord {
    let n = pi.len();
    let mut s = PermStatRecord::default();
    // 1-based with sentinels: p[0] = p[n+1] = 0
    let at = |i: usize| if i == 0 || i > n { 0 } else { pi[i - 1] };
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in pi.iter().enumerate() {
        pos[v] = i + 1;
    }
    // furthest right / left position among values below v
    let mut max_pos_below = vec![0usize; n + 2];
    let mut min_pos_below = vec![usize::MAX; n + 2];
    for v in 1..=n {
        max_pos_below[v + 1] = max_pos_below[v].max(pos[v]);
        min_pos_below[v + 1] = min_pos_below[v].min(pos[v]);
    }
    // max_pos_below[v] covers values 1..v-1
    for i in 1..=n {
        let (prev, cur, next) = (at(i - 1), at(i), at(i + 1));
        let all_smaller_left = max_pos_below[cur] < i;
        let all_smaller_right = min_pos_below[cur] > i;
        if cur > next {
            s.des += 1;
            if i < n {
                s.des_star += 1;
                if all_smaller_right {
                    s.pdes += 1;
                }
            }
        }
        if prev < cur {
            s.asc += 1;
            if i >= 2 {
                s.asc_star += 1;
                if all_smaller_left {
                    s.pasc += 1;
                }
            }
            if all_smaller_left {
                s.pasc_hat += 1;
            }
        }
        match cur.cmp(&i) {
            std::cmp::Ordering::Greater => s.exc += 1,
            std::cmp::Ordering::Less => s.drop += 1,
            std::cmp::Ordering::Equal => s.fix += 1,
        }
        match (prev < cur, cur > next) {
            (true, true) => s.pk += 1,
            (true, false) => s.dasc += 1,
            (false, true) => s.ddes += 1,
            (false, false) => s.val += 1,
        }
    }
    let (mut lo, mut hi) = (usize::MAX, 0);
    for &v in pi {
        if v < lo {
            lo = v;
            s.lrmin += 1;
        }
        if v > hi {
            hi = v;
            s.lrmax += 1;
        }
    }
    let (mut lo, mut hi) = (usize::MAX, 0);
    for &v in pi.iter().rev() {
        if v < lo {
            lo = v;
            s.rlmin += 1;
        }
        if v > hi {
            hi = v;
            s.rlmax += 1;
        }
    }
    let mut seen = vec![false; n + 1];
    for start in 1..=n {
        if !seen[start] {
            s.cyc += 1;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = pi[v - 1];
            }
        }
    }
    s.impasc = s.asc_star - s.pasc;
    s.impdes = s.des_star - s.pdes;
    s.impasc_hat = s.asc - s.pasc_hat;
    if let Some(Mutation::Perm(f)) = mutation {
        *s.get_mut(f) += 1;
    }
    s
}

/// Augmented proper ascents with the clause "or i = 1 and pi(1) = 1" applied
/// literally, on top of the containment test.
pub fn pasc_hat_literal(pi: &[usize]) -> u32 {
    let n = pi.len();
    (1..=n)
        .filter(|&i| {
            let prev = if i == 1 { 0 } else { pi[i - 2] };
            let cur = pi[i - 1];
            let contained = pi.iter().enumerate().all(|(j, &v)| v >= cur || j + 1 < i);
            prev < cur && (contained || (i == 1 && cur == 1))
        })
        .count() as u32
}

/// Statistics of a k-Stirling permutation `w` of length `k n`.
pub fn stirling_stats(w: &[usize], k: usize) -> StirlingStatRecord {
    stirling_stats_with(w, k, None)
}

pub fn stirling_stats_with(w: &[usize], k: usize, mutation: Option<Mutation>) -> StirlingStatRecord {
    assert!(k >= 1);
    let len = w.len();
    let n = w.iter().copied().max().unwrap_or(0);
    let at = |i: usize| if i == 0 || i > len { 0 } else { w[i - 1] };
    let mut last = vec![0usize; n + 2];
    for (i, &v) in w.iter().enumerate() {
        last[v] = i + 1;
    }
    let mut last_below = vec![0usize; n + 2];
    for v in 1..=n {
        last_below[v + 1] = last_below[v].max(last[v]);
    }
    let mut s = StirlingStatRecord::default();
    for i in 1..=len {
        let cur = at(i);
        if at(i - 1) >= cur {
            continue;
        }
        if i >= 2 && i < len && at(i + 1) == cur {
            s.ap2 += 1;
        }
        if i + k - 1 <= len && (i..i + k).all(|j| at(j) == cur) {
            s.lap += 1;
            if i >= 2 {
                s.ap += 1;
            }
            if last_below[cur] < i {
                s.plap += 1;
            }
        }
    }
    let mut lo = usize::MAX;
    for &v in w {
        if v < lo {
            lo = v;
            s.lrmin += 1;
        }
    }
    let mut lo = usize::MAX;
    for &v in w.iter().rev() {
        if v < lo {
            lo = v;
            s.rlmin += 1;
        }
    }
    s.implap = s.lap - s.plap;
    if let Some(Mutation::Word(f)) = mutation {
        *s.get_mut(f) += 1;
    }
    s
}

/// Proper left ascent-plateaux with the clause "or i = 1 and the word starts
/// with k ones" applied literally.
pub fn plap_literal(w: &[usize], k: usize) -> u32 {
    let len = w.len();
    (1..=len + 1 - k.min(len + 1))
        .filter(|&i| {
            let prev = if i == 1 { 0 } else { w[i - 2] };
            let cur = w[i - 1];
            let plateau = prev < cur && w[i - 1..i - 1 + k].iter().all(|&v| v == cur);
            let contained = w.iter().enumerate().all(|(j, &v)| v >= cur || j + 1 < i);
            let clause = i == 1 && w[..k].iter().all(|&v| v == 1);
            plateau && (contained || clause)
        })
        .count() as u32
}

pub fn signed_stats(s: &[i64]) -> SignedStatRecord {
    signed_stats_with(s, None)
}

pub fn signed_stats_with(s: &[i64], mutation: Option<Mutation>) -> SignedStatRecord {
    let mut prev = 0i64;
    let mut des_b = 0;
    for &v in s {
        if prev > v {
            des_b += 1;
        }
        prev = v;
    }
    if mutation == Some(Mutation::SignedDesB) {
        des_b += 1;
    }
    SignedStatRecord { des_b }
}
