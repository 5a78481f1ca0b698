use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Magma;
use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

fn push_reduced(word: &mut Vec<Letter>, l: Letter) {
    if word.last() == Some(&l.inv()) {
        word.pop();
    } else {
        word.push(l);
    }
}

fn inverse_word(w: &[Letter]) -> impl Iterator<Item = Letter> + '_ {
    w.iter().rev().map(|l| l.inv())
}

/// An element `a^w` of the free quandle of rank `r`, with `w` freely
/// reduced and not starting with `a` or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeQuandleElement {
    rank: usize,
    gen: usize,
    word: Vec<Letter>,
}

impl FreeQuandleElement {
    /// Builds `a_gen^word` and brings it to normal form.
    pub fn new(rank: usize, gen: usize, word: &[Letter]) -> Result<Self> {
        if gen >= rank {
            return Err(Error::IndexOutOfRange { index: gen, n: rank });
        }
        if let Some(l) = word.iter().find(|l| l.gen >= rank) {
            return Err(Error::IndexOutOfRange { index: l.gen, n: rank });
        }
        let mut reduced = Vec::with_capacity(word.len());
        word.iter().for_each(|&l| push_reduced(&mut reduced, l));
        Ok(Self::normalized(rank, gen, reduced))
    }

    pub fn generator(rank: usize, gen: usize) -> Result<Self> {
        Self::new(rank, gen, &[])
    }

    fn normalized(rank: usize, gen: usize, reduced: Vec<Letter>) -> Self {
        let skip = reduced.iter().take_while(|l| l.gen == gen).count();
        FreeQuandleElement {
            rank,
            gen,
            word: reduced[skip..].to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gen(&self) -> usize {
        self.gen
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    fn conjugate_by(&self, other: &Self, inverse: bool) -> Self {
        let mut w = self.word.clone();
        inverse_word(&other.word).for_each(|l| push_reduced(&mut w, l));
        push_reduced(&mut w, Letter::new(other.gen, inverse));
        other.word.iter().for_each(|&l| push_reduced(&mut w, l));
        Self::normalized(self.rank, self.gen, w)
    }

    /// `a^w * b^u = a^{w u^-1 b u}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.conjugate_by(other, false))
    }

    /// The unique `z` with `z * other = self`, namely `a^{w u^-1 b^-1 u}`.
    pub fn right_divide(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.conjugate_by(other, true))
    }

    /// Parses `a2`, `a2^[]` or `a2^[+0 -1 +0]` (generator 2 conjugated by
    /// `a0 a1^-1 a0`). Each letter is a sign followed by a generator index.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad free quandle element `{s}`"));
        let body = s.strip_prefix('a').ok_or_else(bad)?;
        let (gen, word) = match body.split_once('^') {
            None => (body, None),
            Some((g, w)) => (g, Some(w)),
        };
        let gen: usize = gen.trim().parse().map_err(|_| bad())?;
        let mut letters = Vec::new();
        if let Some(w) = word {
            let inner = w
                .trim()
                .strip_prefix('[')
                .and_then(|w| w.strip_suffix(']'))
                .ok_or_else(bad)?;
            for tok in inner.split_whitespace() {
                let (inverse, idx) = if let Some(t) = tok.strip_prefix('+') {
                    (false, t)
                } else if let Some(t) = tok.strip_prefix('-') {
                    (true, t)
                } else {
                    return Err(bad());
                };
                letters.push(Letter::new(idx.parse().map_err(|_| bad())?, inverse));
            }
        }
        Self::new(rank, gen, &letters)
    }

    /// A random element with a word of at most `max_len` letters before
    /// normalization.
    pub fn random<R: Rng>(rank: usize, max_len: usize, rng: &mut R) -> Self {
        let gen = rng.gen_range(0..rank);
        let len = rng.gen_range(0..=max_len);
        let word: Vec<Letter> = (0..len)
            .map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5)))
            .collect();
        Self::new(rank, gen, &word).expect("indices drawn in range")
    }
}

impl fmt::Display for FreeQuandleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.gen)?;
        if !self.word.is_empty() {
            let letters: Vec<String> = self
                .word
                .iter()
                .map(|l| format!("{}{}", if l.inverse { '-' } else { '+' }, l.gen))
                .collect();
            write!(f, "^[{}]", letters.join(" "))?;
        }
        Ok(())
    }
}

/// Equality of normal forms; elements of different ranks are never equal.
pub fn fq_equal(x: &FreeQuandleElement, y: &FreeQuandleElement) -> bool {
    x == y
}

/// The free quandle on `rank` generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeQuandle {
    pub rank: usize,
}

impl FreeQuandle {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Unsupported("free quandle of rank 0".into()));
        }
        Ok(FreeQuandle { rank })
    }
}

impl Magma for FreeQuandle {
    type Elem = FreeQuandleElement;
    fn op(&self, a: &FreeQuandleElement, b: &FreeQuandleElement) -> FreeQuandleElement {
        a.multiply(b).expect("elements of one free quandle share its rank")
    }
    fn label(&self, a: &FreeQuandleElement) -> String {
        a.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiLatinReport {
    pub rank: usize,
    pub trials: usize,
    /// Trials where `x != y`, the only ones that test anything.
    pub distinct_trials: usize,
    pub violations: usize,
    pub counterexample: Option<(FreeQuandleElement, FreeQuandleElement, FreeQuandleElement)>,
}

/// Samples `z, x, y` and checks that `x != y` implies `z * x != z * y`.
pub fn fq_semi_latin_sample(rank: usize, trials: usize, max_word_len: usize, seed: u64) -> Result<SemiLatinReport> {
    FreeQuandle::new(rank)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SemiLatinReport {
        rank,
        trials,
        distinct_trials: 0,
        violations: 0,
        counterexample: None,
    };
    for _ in 0..trials {
        let z = FreeQuandleElement::random(rank, max_word_len, &mut rng);
        let x = FreeQuandleElement::random(rank, max_word_len, &mut rng);
        let y = FreeQuandleElement::random(rank, max_word_len, &mut rng);
        if x == y {
            continue;
        }
        report.distinct_trials += 1;
        if z.multiply(&x)? == z.multiply(&y)? {
            report.violations += 1;
            report.counterexample.get_or_insert((z, x, y));
        }
    }
    Ok(report)
}
