//! Exhaustive generation of every color-avoiding deal on `n` denominations.
//!
//! Subsets `S` are visited in lexicographic order of their sorted lists
//! (`{}`, `{1}`, `{1,2}`, ..., `{2}`, ...). Within one `S`, each denomination
//! gets an [`AssignmentCode`] choosing a legal recipient for each of its three
//! cards; the `8^|S|` code vectors are visited as base-8 numbers with the
//! smallest denomination most significant, and only the vectors giving three
//! equal hands are kept.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::closed_forms::Count;
use crate::model::{Card, Color, Deal, DeckSpec, DenomSet, Denomination};

/// Largest `n` enumerated without an explicit override.
pub const EXHAUSTIVE_GUARD: u32 = 5;

/// Hard ceiling even with the override: `8^n` code vectors must fit in a `u64`.
pub const EXHAUSTIVE_CEILING: u32 = 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("n = {n} exceeds the exhaustive guard {guard}; pass the override to enumerate anyway")]
    Guard { n: u32, guard: u32 },
    #[error("n = {n} exceeds the hard enumeration ceiling {ceiling}")]
    Ceiling { n: u32, ceiling: u32 },
    #[error("denomination {denomination} outside 1..={n}")]
    Denomination { denomination: Denomination, n: u32 },
}

/// Whether to enumerate past [`EXHAUSTIVE_GUARD`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub allow_large: bool,
}

impl Limits {
    pub const OVERRIDE: Limits = Limits { allow_large: true };

    pub fn check(self, spec: DeckSpec) -> Result<(), EnumerationError> {
        let n = spec.n();
        if n > EXHAUSTIVE_CEILING {
            return Err(EnumerationError::Ceiling {
                n,
                ceiling: EXHAUSTIVE_CEILING,
            });
        }
        if n > EXHAUSTIVE_GUARD && !self.allow_large {
            return Err(EnumerationError::Guard {
                n,
                guard: EXHAUSTIVE_GUARD,
            });
        }
        Ok(())
    }
}

/// Per-denomination choice of recipients, three bits:
/// bit 0 sends the red card to green (0) or blue (1),
/// bit 1 sends the green card to red (0) or blue (1),
/// bit 2 sends the blue card to red (0) or green (1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssignmentCode(u8);

impl AssignmentCode {
    pub fn new(bits: u8) -> Option<Self> {
        (bits < 8).then_some(AssignmentCode(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = AssignmentCode> {
        (0..8).map(AssignmentCode)
    }

    /// Player receiving the card of `color`. Never `color` itself.
    pub fn recipient(self, color: Color) -> Color {
        let bit = |i: u8| self.0 >> i & 1 == 1;
        match color {
            Color::Red if bit(0) => Color::Blue,
            Color::Red => Color::Green,
            Color::Green if bit(1) => Color::Blue,
            Color::Green => Color::Red,
            Color::Blue if bit(2) => Color::Green,
            Color::Blue => Color::Red,
        }
    }

    /// Reads the code back from a deal; `None` if a card is missing or own-colored.
    pub fn of(deal: &Deal, d: Denomination) -> Option<Self> {
        let holder = |color| {
            Color::ALL
                .into_iter()
                .find(|&p| deal.hand(p).contains(&Card::new(d, color)))
        };
        let red = match holder(Color::Red)? {
            Color::Green => 0,
            Color::Blue => 1,
            Color::Red => return None,
        };
        let green = match holder(Color::Green)? {
            Color::Red => 0,
            Color::Blue => 1,
            Color::Green => return None,
        };
        let blue = match holder(Color::Blue)? {
            Color::Red => 0,
            Color::Green => 1,
            Color::Blue => return None,
        };
        Some(AssignmentCode(red | green << 1 | blue << 2))
    }

    fn hand_counts(self) -> [i32; 3] {
        let mut counts = [0; 3];
        for color in Color::ALL {
            counts[self.recipient(color).index()] += 1;
        }
        counts
    }
}

/// Subsets of `{1..n}` in lexicographic order of their sorted lists.
#[derive(Debug, Clone)]
pub struct LexSubsets {
    n: u32,
    current: Option<Vec<Denomination>>,
}

impl LexSubsets {
    pub fn new(n: u32) -> Self {
        LexSubsets {
            n,
            current: Some(Vec::new()),
        }
    }
}

impl Iterator for LexSubsets {
    type Item = Vec<Denomination>;

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.current.take()?;
        let mut next = out.clone();
        match next.last().copied() {
            None if self.n == 0 => {}
            None => {
                next.push(1);
                self.current = Some(next);
            }
            Some(last) if last < self.n => {
                next.push(last + 1);
                self.current = Some(next);
            }
            Some(_) => {
                next.pop();
                if let Some(last) = next.last_mut() {
                    *last += 1;
                    self.current = Some(next);
                }
            }
        }
        Some(out)
    }
}

/// Every valid deal with denomination set exactly `s`, in code order.
fn deals_on(spec: DeckSpec, s: Vec<Denomination>) -> impl Iterator<Item = Deal> {
    let k = s.len() as u32;
    let total = 8u64.pow(k);
    (0..total).filter_map(move |index| {
        let codes: Vec<AssignmentCode> = (0..k)
            .map(|pos| AssignmentCode((index >> (3 * (k - 1 - pos)) & 7) as u8))
            .collect();
        let mut balance = [0i32; 3];
        for code in &codes {
            for (b, c) in balance.iter_mut().zip(code.hand_counts()) {
                *b += c - 1;
            }
        }
        if balance != [0, 0, 0] {
            return None;
        }
        let mut hands: [BTreeSet<Card>; 3] = Default::default();
        for (&d, code) in s.iter().zip(&codes) {
            for color in Color::ALL {
                hands[code.recipient(color).index()].insert(Card::new(d, color));
            }
        }
        let [red, green, blue] = hands;
        Some(Deal::new(
            spec,
            s.iter().copied().collect(),
            red,
            green,
            blue,
        ))
    })
}

/// Every deal on `n` denominations, each exactly once, in canonical order.
pub fn enumerate_deals(
    spec: DeckSpec,
    limits: Limits,
) -> Result<impl Iterator<Item = Deal>, EnumerationError> {
    limits.check(spec)?;
    Ok(LexSubsets::new(spec.n()).flat_map(move |s| deals_on(spec, s)))
}

/// Deals using the whole deck, `S = {1..n}`.
pub fn enumerate_full_color_deals(
    spec: DeckSpec,
    limits: Limits,
) -> Result<impl Iterator<Item = Deal>, EnumerationError> {
    limits.check(spec)?;
    Ok(deals_on(spec, (1..=spec.n()).collect()))
}

/// Deals whose red player holds cards of exactly the denominations in `red`.
pub fn enumerate_deals_with_red_denoms(
    spec: DeckSpec,
    red: &DenomSet,
    limits: Limits,
) -> Result<impl Iterator<Item = Deal>, EnumerationError> {
    if let Some(&denomination) = red.iter().find(|&&d| !spec.contains(d)) {
        return Err(EnumerationError::Denomination {
            denomination,
            n: spec.n(),
        });
    }
    let red = red.clone();
    Ok(
        enumerate_deals(spec, limits)?
            .filter(move |deal| deal.red_denominations_unchecked() == red),
    )
}

/// Which statistic a histogram buckets by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// `|S|`.
    SSize,
    /// Distinct denominations in the red player's hand.
    RedDistinct,
}

impl Statistic {
    pub fn of(self, deal: &Deal) -> usize {
        let stats = deal.stats_unchecked();
        match self {
            Statistic::SSize => stats.s_size,
            Statistic::RedDistinct => stats.red_distinct,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::SSize => "s-size",
            Statistic::RedDistinct => "red-distinct",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown statistic {0:?}; expected s-size or red-distinct")]
pub struct ParseStatisticError(String);

impl FromStr for Statistic {
    type Err = ParseStatisticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s-size" => Ok(Statistic::SSize),
            "red-distinct" => Ok(Statistic::RedDistinct),
            other => Err(ParseStatisticError(other.to_string())),
        }
    }
}

/// Exact bucket counts indexed by `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    buckets: Vec<Count>,
}

impl Histogram {
    pub fn zeros(n: u32) -> Self {
        Histogram {
            buckets: vec![Count::default(); n as usize + 1],
        }
    }

    pub fn get(&self, k: usize) -> Option<&Count> {
        self.buckets.get(k)
    }

    pub fn total(&self) -> Count {
        self.buckets.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// `(k, count)` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Count)> {
        self.buckets.iter().enumerate()
    }

    fn merge(mut self, other: Histogram) -> Histogram {
        for (a, b) in self.buckets.iter_mut().zip(other.buckets) {
            *a += b;
        }
        self
    }
}

/// Counts every deal in the family by `statistic`.
///
/// The subsets `S` are split across worker threads; partial histograms are
/// summed, so the result does not depend on scheduling.
pub fn histogram(
    spec: DeckSpec,
    statistic: Statistic,
    limits: Limits,
) -> Result<Histogram, EnumerationError> {
    limits.check(spec)?;
    let n = spec.n();
    let subsets: Vec<_> = LexSubsets::new(n).collect();
    Ok(subsets
        .into_par_iter()
        .map(|s| {
            let mut local = vec![0u64; n as usize + 1];
            for deal in deals_on(spec, s) {
                local[statistic.of(&deal)] += 1;
            }
            Histogram {
                buckets: local.into_iter().map(Count::from).collect(),
            }
        })
        .reduce(|| Histogram::zeros(n), Histogram::merge))
}

/// `|family|` for `n` denominations, by enumeration.
pub fn count_deals(spec: DeckSpec, limits: Limits) -> Result<Count, EnumerationError> {
    Ok(histogram(spec, Statistic::SSize, limits)?.total())
}
