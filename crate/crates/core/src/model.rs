//! Cards, deals and the validity rules for color-avoiding deals.
//!
//! A deck of size `n` has `3n` cards: every denomination `1..=n` comes in
//! red, green and blue. A [`Deal`] picks a denomination set `S` and hands
//! every card of those denominations to one of three players (also named
//! red, green and blue) so that the hands have equal size `|S|` and no player
//! holds a card of her own color.
//!
//! The canonical text form is
//! `S={1,2};R=[g1,b1];G=[r2,b2];B=[r1,g2]`, with cards sorted by
//! `(denomination, color)` inside each hand.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A denomination, `1..=n`.
pub type Denomination = u32;

/// A set of denominations, iterated in increasing order.
pub type DenomSet = BTreeSet<Denomination>;

/// Number of denominations in the deck. The deck holds `3n` cards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeckSpec {
    n: u32,
}

impl DeckSpec {
    pub const fn new(n: u32) -> Self {
        DeckSpec { n }
    }

    pub const fn n(self) -> u32 {
        self.n
    }

    pub fn contains(self, d: Denomination) -> bool {
        (1..=self.n).contains(&d)
    }

    /// `{1, ..., n}`.
    pub fn all_denominations(self) -> DenomSet {
        (1..=self.n).collect()
    }
}

/// Card color, which doubles as the identity of the player avoiding it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub const fn index(self) -> usize {
        match self {
            Color::Red => 0,
            Color::Green => 1,
            Color::Blue => 2,
        }
    }

    /// Lowercase initial used in card tokens (`g3`).
    pub const fn initial(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Green => 'g',
            Color::Blue => 'b',
        }
    }

    /// Uppercase initial used as the hand label in the deal text form.
    pub const fn label(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }

    pub fn from_initial(c: char) -> Option<Color> {
        match c {
            'r' => Some(Color::Red),
            'g' => Some(Color::Green),
            'b' => Some(Color::Blue),
            _ => None,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single card. Ordering is by `(denomination, color)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card {
    pub denomination: Denomination,
    pub color: Color,
}

impl Card {
    pub const fn new(denomination: Denomination, color: Color) -> Self {
        Card {
            denomination,
            color,
        }
    }

    pub const fn red(d: Denomination) -> Self {
        Card::new(d, Color::Red)
    }

    pub const fn green(d: Denomination) -> Self {
        Card::new(d, Color::Green)
    }

    pub const fn blue(d: Denomination) -> Self {
        Card::new(d, Color::Blue)
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.color.initial(), self.denomination)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid card token {0:?}")]
pub struct ParseCardError(pub String);

impl FromStr for Card {
    type Err = ParseCardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCardError(s.to_string());
        let mut chars = s.chars();
        let color = chars.next().and_then(Color::from_initial).ok_or_else(err)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let denomination = digits.parse().map_err(|_| err())?;
        Ok(Card::new(denomination, color))
    }
}

/// How a cover of the cards of `S` went wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageFault {
    /// A card of a denomination in `S` is in no hand.
    Missing,
    /// A card of a denomination outside `S` was dealt.
    Extra,
    /// The same card sits in two hands.
    Duplicate,
}

/// The first invariant a candidate deal breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("denomination {denomination} outside 1..={n}")]
    Range { denomination: Denomination, n: u32 },
    #[error("coverage: card {card} is {fault:?}")]
    Coverage { card: Card, fault: CoverageFault },
    #[error("size: hands have {red}/{green}/{blue} cards, expected {expected} each")]
    Size {
        red: usize,
        green: usize,
        blue: usize,
        expected: usize,
    },
    #[error("own color: {player} player holds {card}")]
    OwnColor { player: Color, card: Card },
}

impl Violation {
    /// Short identity of the broken invariant: `range`, `coverage`, `size` or `own-color`.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Range { .. } => "range",
            Violation::Coverage { .. } => "coverage",
            Violation::Size { .. } => "size",
            Violation::OwnColor { .. } => "own-color",
        }
    }
}

/// The two statistics the title identity counts deals by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DealStats {
    /// `|S|`.
    pub s_size: usize,
    /// Number of distinct denominations among the red player's cards.
    pub red_distinct: usize,
}

/// A candidate deal: a denomination set and three hands indexed by [`Color`].
///
/// Construction does not validate; call [`Deal::validate`] to check the deal
/// invariants. Everything produced by enumeration or the bijections is valid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deal {
    spec: DeckSpec,
    denominations: DenomSet,
    hands: [BTreeSet<Card>; 3],
}

impl Deal {
    pub fn new(
        spec: DeckSpec,
        denominations: DenomSet,
        red: BTreeSet<Card>,
        green: BTreeSet<Card>,
        blue: BTreeSet<Card>,
    ) -> Self {
        Deal {
            spec,
            denominations,
            hands: [red, green, blue],
        }
    }

    /// The deal with `S = {}`; the only member of the family for `n = 0`.
    pub fn empty(spec: DeckSpec) -> Self {
        Deal::new(
            spec,
            DenomSet::new(),
            BTreeSet::new(),
            BTreeSet::new(),
            BTreeSet::new(),
        )
    }

    pub fn spec(&self) -> DeckSpec {
        self.spec
    }

    pub fn denominations(&self) -> &DenomSet {
        &self.denominations
    }

    /// Hand of the player who avoids `player`'s color.
    pub fn hand(&self, player: Color) -> &BTreeSet<Card> {
        &self.hands[player.index()]
    }

    /// Checks range, then coverage, then hand sizes, then own-color.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.spec.n();
        let range = |denomination| Violation::Range { denomination, n };

        for &d in &self.denominations {
            if !self.spec.contains(d) {
                return Err(range(d));
            }
        }
        for hand in &self.hands {
            if let Some(card) = hand.iter().find(|c| !self.spec.contains(c.denomination)) {
                return Err(range(card.denomination));
            }
        }

        let mut seen = BTreeSet::new();
        for card in self.hands.iter().flatten() {
            if !self.denominations.contains(&card.denomination) {
                return Err(Violation::Coverage {
                    card: *card,
                    fault: CoverageFault::Extra,
                });
            }
            if !seen.insert(*card) {
                return Err(Violation::Coverage {
                    card: *card,
                    fault: CoverageFault::Duplicate,
                });
            }
        }
        for &d in &self.denominations {
            for color in Color::ALL {
                let card = Card::new(d, color);
                if !seen.contains(&card) {
                    return Err(Violation::Coverage {
                        card,
                        fault: CoverageFault::Missing,
                    });
                }
            }
        }

        let expected = self.denominations.len();
        let [red, green, blue] = self.hands.each_ref().map(BTreeSet::len);
        if red != expected || green != expected || blue != expected {
            return Err(Violation::Size {
                red,
                green,
                blue,
                expected,
            });
        }

        for player in Color::ALL {
            if let Some(card) = self.hand(player).iter().find(|c| c.color == player) {
                return Err(Violation::OwnColor {
                    player,
                    card: *card,
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn stats(&self) -> Result<DealStats, Violation> {
        self.validate()?;
        Ok(self.stats_unchecked())
    }

    /// Denominations with at least one card in the red player's hand.
    pub fn red_denominations(&self) -> Result<DenomSet, Violation> {
        self.validate()?;
        Ok(self.red_denominations_unchecked())
    }

    pub(crate) fn stats_unchecked(&self) -> DealStats {
        DealStats {
            s_size: self.denominations.len(),
            red_distinct: self.red_denominations_unchecked().len(),
        }
    }

    pub(crate) fn red_denominations_unchecked(&self) -> DenomSet {
        self.hand(Color::Red)
            .iter()
            .map(|c| c.denomination)
            .collect()
    }

    /// One CSV row `s,red,green,blue`; set members are space separated.
    pub fn to_csv_row(&self) -> String {
        let join = |items: Vec<String>| items.join(" ");
        let mut fields = vec![join(
            self.denominations.iter().map(u32::to_string).collect(),
        )];
        for hand in &self.hands {
            fields.push(join(hand.iter().map(Card::to_string).collect()));
        }
        fields.join(",")
    }

    pub const CSV_HEADER: &'static str = "s,red,green,blue";

    /// Parses the canonical text form against a deck of the given size.
    ///
    /// The result is not validated; hands and `S` are read as written.
    pub fn parse(spec: DeckSpec, text: &str) -> Result<Deal, ParseDealError> {
        let mut parts = text.trim().split(';');
        let mut next = |prefix: &str| -> Result<&str, ParseDealError> {
            let part = parts.next().ok_or(ParseDealError::Layout)?;
            part.strip_prefix(prefix).ok_or(ParseDealError::Layout)
        };

        let s_body = next("S=")?;
        let s_inner = s_body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or(ParseDealError::Layout)?;
        let mut denominations = DenomSet::new();
        for tok in split_items(s_inner) {
            let d = tok
                .parse()
                .map_err(|_| ParseDealError::Denomination(tok.to_string()))?;
            if !denominations.insert(d) {
                return Err(ParseDealError::Repeated(tok.to_string()));
            }
        }

        let mut hands: [BTreeSet<Card>; 3] = Default::default();
        for player in Color::ALL {
            let prefix = format!("{}=", player.label());
            let body = next(&prefix)?;
            let inner = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or(ParseDealError::Layout)?;
            for tok in split_items(inner) {
                let card: Card = tok.parse()?;
                if !hands[player.index()].insert(card) {
                    return Err(ParseDealError::Repeated(tok.to_string()));
                }
            }
        }
        if parts.next().is_some() {
            return Err(ParseDealError::Layout);
        }
        let [red, green, blue] = hands;
        Ok(Deal::new(spec, denominations, red, green, blue))
    }
}

fn split_items(inner: &str) -> impl Iterator<Item = &str> {
    inner.split(',').filter(|t| !t.is_empty())
}

impl fmt::Display for Deal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("S=")?;
        write_set(f, &self.denominations)?;
        for player in Color::ALL {
            write!(f, ";{}=[", player.label())?;
            for (i, card) in self.hand(player).iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{card}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Writes `{1,2,3}`, or `{}` for the empty set.
pub fn write_set(f: &mut impl fmt::Write, set: &DenomSet) -> fmt::Result {
    f.write_char('{')?;
    for (i, d) in set.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{d}")?;
    }
    f.write_char('}')
}

/// `{1,2,3}` as a `String`.
pub fn format_set(set: &DenomSet) -> String {
    let mut out = String::new();
    write_set(&mut out, set).expect("writing to a String cannot fail");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseDealError {
    #[error("expected `S={{..}};R=[..];G=[..];B=[..]`")]
    Layout,
    #[error("invalid denomination {0:?}")]
    Denomination(String),
    #[error("repeated item {0:?}")]
    Repeated(String),
    #[error(transparent)]
    Card(#[from] ParseCardError),
}
