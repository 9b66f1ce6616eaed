//! Parameterizations of deals by tuples of denomination sets.
//!
//! [`Prop1Params`] describes a full-deck deal by which green and blue cards
//! the red player holds and which red cards the blue player holds. There are
//! `sum_j C(n, j)^3` such tuples.
//!
//! [`Prop2Params`] describes any deal by the denominations `D` in red's hand,
//! split into `A` (red holds both the green and the blue card), `B` (blue card
//! only) and `C` (green card only), plus the set `E` of dealt denominations
//! absent from red's hand and the set `R` of red cards held by blue. For a
//! fixed `D` of size `k` there are `C(n, k) * C(2k, k)` such tuples.
//!
//! `encode` and `decode` are mutually inverse on valid inputs.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::model::{format_set, Card, Color, Deal, DeckSpec, DenomSet, Denomination, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("denomination {denomination} outside 1..={n}")]
    Range { denomination: Denomination, n: u32 },
    #[error("constraint violated: {0}")]
    Constraint(&'static str),
    #[error("invalid deal: {0}")]
    InvalidDeal(#[from] Violation),
    #[error("deal does not use the whole deck")]
    NotFullDeck,
}

fn check_range(spec: DeckSpec, sets: &[&DenomSet]) -> Result<(), BijectionError> {
    for set in sets {
        if let Some(&denomination) = set.iter().find(|&&d| !spec.contains(d)) {
            return Err(BijectionError::Range {
                denomination,
                n: spec.n(),
            });
        }
    }
    Ok(())
}

fn ensure(cond: bool, what: &'static str) -> Result<(), BijectionError> {
    if cond {
        Ok(())
    } else {
        Err(BijectionError::Constraint(what))
    }
}

fn cards(set: &DenomSet, color: Color) -> impl Iterator<Item = Card> + '_ {
    set.iter().map(move |&d| Card::new(d, color))
}

fn held(deal: &Deal, player: Color, color: Color) -> DenomSet {
    deal.hand(player)
        .iter()
        .filter(|c| c.color == color)
        .map(|c| c.denomination)
        .collect()
}

/// All subsets of `items`, smaller sizes first, each size in lexicographic order.
fn subsets(items: &DenomSet) -> impl Iterator<Item = DenomSet> + '_ {
    (0..=items.len()).flat_map(move |size| subsets_of_size(items, size))
}

fn subsets_of_size(items: &DenomSet, size: usize) -> impl Iterator<Item = DenomSet> + '_ {
    items
        .iter()
        .copied()
        .combinations(size)
        .map(|c| c.into_iter().collect())
}

/// A full-deck deal given by the red player's green cards, her blue cards
/// and the blue player's red cards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prop1Params {
    pub spec: DeckSpec,
    /// Green cards in red's hand (`j` of them).
    pub green_in_red: DenomSet,
    /// Blue cards in red's hand (`n - j`).
    pub blue_in_red: DenomSet,
    /// Red cards in blue's hand (`j`).
    pub red_in_blue: DenomSet,
}

impl Prop1Params {
    pub fn validate(&self) -> Result<(), BijectionError> {
        check_range(
            self.spec,
            &[&self.green_in_red, &self.blue_in_red, &self.red_in_blue],
        )?;
        let n = self.spec.n() as usize;
        let j = self.green_in_red.len();
        ensure(self.blue_in_red.len() == n - j, "|Bl| = n - |J|")?;
        ensure(self.red_in_blue.len() == j, "|Rd| = |J|")
    }

    pub fn encode(&self) -> Result<Deal, BijectionError> {
        self.validate()?;
        let all = self.spec.all_denominations();
        let rest = |set: &DenomSet| -> DenomSet { all.difference(set).copied().collect() };

        let red: BTreeSet<Card> = cards(&self.green_in_red, Color::Green)
            .chain(cards(&self.blue_in_red, Color::Blue))
            .collect();
        let blue: BTreeSet<Card> = cards(&rest(&self.green_in_red), Color::Green)
            .chain(cards(&self.red_in_blue, Color::Red))
            .collect();
        let green: BTreeSet<Card> = cards(&rest(&self.blue_in_red), Color::Blue)
            .chain(cards(&rest(&self.red_in_blue), Color::Red))
            .collect();
        Ok(Deal::new(self.spec, all, red, green, blue))
    }

    pub fn decode(deal: &Deal) -> Result<Prop1Params, BijectionError> {
        deal.validate()?;
        let spec = deal.spec();
        if *deal.denominations() != spec.all_denominations() {
            return Err(BijectionError::NotFullDeck);
        }
        Ok(Prop1Params {
            spec,
            green_in_red: held(deal, Color::Red, Color::Green),
            blue_in_red: held(deal, Color::Red, Color::Blue),
            red_in_blue: held(deal, Color::Blue, Color::Red),
        })
    }

    /// Every valid tuple for `spec`, by `j`, then `J`, `Bl`, `Rd`.
    pub fn all(spec: DeckSpec) -> impl Iterator<Item = Prop1Params> {
        let all = spec.all_denominations();
        let n = all.len();
        (0..=n).flat_map(move |j| {
            let choose = |size| subsets_of_size(&all, size).collect::<Vec<_>>();
            let (js, bls, rds) = (choose(j), choose(n - j), choose(j));
            js.into_iter()
                .cartesian_product(bls)
                .cartesian_product(rds)
                .map(
                    move |((green_in_red, blue_in_red), red_in_blue)| Prop1Params {
                        spec,
                        green_in_red,
                        blue_in_red,
                        red_in_blue,
                    },
                )
        })
    }
}

impl fmt::Display for Prop1Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J={};Bl={};Rd={}",
            format_set(&self.green_in_red),
            format_set(&self.blue_in_red),
            format_set(&self.red_in_blue)
        )
    }
}

/// A deal described through the denominations in the red player's hand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prop2Params {
    pub spec: DeckSpec,
    /// `D`: denominations appearing in red's hand.
    pub red_denoms: DenomSet,
    /// `A`: red holds both the green and the blue card.
    pub both: DenomSet,
    /// `B`: red holds the blue card only.
    pub blue_only: DenomSet,
    /// `E`: dealt denominations not in `D`; `|E| = |A|`.
    pub extra: DenomSet,
    /// `R`: denominations whose red card goes to blue; `|R| = |A| + |C|`.
    pub red_to_blue: DenomSet,
}

impl Prop2Params {
    /// `C = D \ (A u B)`.
    pub fn green_only(&self) -> DenomSet {
        self.red_denoms
            .iter()
            .filter(|d| !self.both.contains(d) && !self.blue_only.contains(d))
            .copied()
            .collect()
    }

    pub fn dealt(&self) -> DenomSet {
        self.red_denoms.union(&self.extra).copied().collect()
    }

    pub fn validate(&self) -> Result<(), BijectionError> {
        check_range(
            self.spec,
            &[
                &self.red_denoms,
                &self.both,
                &self.blue_only,
                &self.extra,
                &self.red_to_blue,
            ],
        )?;
        ensure(self.both.is_subset(&self.red_denoms), "A is a subset of D")?;
        ensure(
            self.blue_only.is_subset(&self.red_denoms) && self.blue_only.is_disjoint(&self.both),
            "B is a subset of D \\ A",
        )?;
        ensure(
            self.extra.is_disjoint(&self.red_denoms),
            "E is disjoint from D",
        )?;
        ensure(self.extra.len() == self.both.len(), "|E| = |A|")?;
        ensure(
            self.red_to_blue.is_subset(&self.dealt()),
            "R is a subset of D u E",
        )?;
        ensure(
            self.red_to_blue.len() == self.both.len() + self.green_only().len(),
            "|R| = a + c",
        )
    }

    pub fn encode(&self) -> Result<Deal, BijectionError> {
        self.validate()?;
        let c = self.green_only();
        let dealt = self.dealt();
        let blue_only_or_extra: DenomSet = self.blue_only.union(&self.extra).copied().collect();
        let green_only_or_extra: DenomSet = c.union(&self.extra).copied().collect();
        let red_to_green: DenomSet = dealt.difference(&self.red_to_blue).copied().collect();

        let red: BTreeSet<Card> = cards(&self.both, Color::Green)
            .chain(cards(&self.both, Color::Blue))
            .chain(cards(&self.blue_only, Color::Blue))
            .chain(cards(&c, Color::Green))
            .collect();
        let blue: BTreeSet<Card> = cards(&blue_only_or_extra, Color::Green)
            .chain(cards(&self.red_to_blue, Color::Red))
            .collect();
        let green: BTreeSet<Card> = cards(&green_only_or_extra, Color::Blue)
            .chain(cards(&red_to_green, Color::Red))
            .collect();
        Ok(Deal::new(self.spec, dealt, red, green, blue))
    }

    pub fn decode(deal: &Deal) -> Result<Prop2Params, BijectionError> {
        deal.validate()?;
        let greens = held(deal, Color::Red, Color::Green);
        let blues = held(deal, Color::Red, Color::Blue);
        let red_denoms: DenomSet = greens.union(&blues).copied().collect();
        Ok(Prop2Params {
            spec: deal.spec(),
            both: greens.intersection(&blues).copied().collect(),
            blue_only: blues.difference(&greens).copied().collect(),
            extra: deal
                .denominations()
                .difference(&red_denoms)
                .copied()
                .collect(),
            red_to_blue: held(deal, Color::Blue, Color::Red),
            red_denoms,
        })
    }

    /// Every valid tuple with red denominations exactly `red_denoms`,
    /// ordered by `(A, B, E, R)`.
    pub fn all(
        spec: DeckSpec,
        red_denoms: &DenomSet,
    ) -> Result<impl Iterator<Item = Prop2Params>, BijectionError> {
        check_range(spec, &[red_denoms])?;
        let d = red_denoms.clone();
        let outside: DenomSet = spec.all_denominations().difference(&d).copied().collect();

        let mut out = Vec::new();
        for both in subsets(&d) {
            let free: DenomSet = d.difference(&both).copied().collect();
            for blue_only in subsets(&free) {
                let c = free.len() - blue_only.len();
                for extra in subsets_of_size(&outside, both.len()) {
                    let dealt: DenomSet = d.union(&extra).copied().collect();
                    for red_to_blue in subsets_of_size(&dealt, both.len() + c) {
                        out.push(Prop2Params {
                            spec,
                            red_denoms: d.clone(),
                            both: both.clone(),
                            blue_only: blue_only.clone(),
                            extra: extra.clone(),
                            red_to_blue,
                        });
                    }
                }
            }
        }
        Ok(out.into_iter())
    }
}

impl fmt::Display for Prop2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D={};A={};B={};E={};R={}",
            format_set(&self.red_denoms),
            format_set(&self.both),
            format_set(&self.blue_only),
            format_set(&self.extra),
            format_set(&self.red_to_blue)
        )
    }
}
