//! The `deals` command-line tool.
//!
//! [`run`] parses arguments and writes results and diagnostics to the given
//! writers, returning the process exit status:
//! 0 on success, 1 on a verification mismatch, 2 on a usage error.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use deals_core::enumeration::EXHAUSTIVE_GUARD;
use deals_core::laurent::{base_power, CT_GUARD};
use deals_core::model::{format_set, Color};
use deals_core::{
    binomial, count_deals, enumerate_deals, enumerate_deals_with_red_denoms,
    enumerate_full_color_deals, franel, histogram, lhs_sum, prop2_count, rhs_sum, stat1_count,
    stat2_count, Count, Deal, DeckSpec, DenomSet, IdentityPolys, LaurentPoly, Limits, Prop1Params,
    Prop2Params, Sequence, Statistic,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "deals",
    version,
    about = "Count, enumerate and audit color-avoiding card deals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum By {
    SSize,
    RedDistinct,
}

impl From<By> for Statistic {
    fn from(by: By) -> Statistic {
        match by {
            By::SSize => Statistic::SSize,
            By::RedDistinct => Statistic::RedDistinct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Prop1,
    Prop2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Seq {
    Main,
    Franel,
    PrefixSum,
}

impl From<Seq> for Sequence {
    fn from(seq: Seq) -> Sequence {
        match seq {
            Seq::Main => Sequence::Main,
            Seq::Franel => Sequence::Franel,
            Seq::PrefixSum => Sequence::PrefixSum,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check both sides of the identity and the constant term for n = 0..=max-n.
    Verify {
        #[arg(long, default_value_t = 20)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Histogram of all deals by a statistic, checked against the closed forms.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = By::SSize)]
        by: By,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Enumerate beyond the exhaustive guard.
        #[arg(long)]
        allow_large: bool,
    },
    /// Stream deals, one per line, in canonical order.
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Only deals using the whole deck.
        #[arg(long, conflicts_with = "red_denoms")]
        full: bool,
        /// Only deals whose red hand uses exactly these denominations, e.g. `1,3`.
        #[arg(long, value_parser = parse_denoms)]
        red_denoms: Option<DenomSet>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
    /// Round-trip and image checks for the deal parameterizations.
    Audit {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        allow_large: bool,
    },
    /// Constant term of the n-th power of the Laurent base, or the power itself.
    Ct {
        #[arg(long)]
        n: u64,
        /// Print the expanded polynomial instead of its constant term.
        #[arg(long)]
        poly: bool,
    },
    /// Export a sequence as `<n> <a(n)>` lines starting at n = 0.
    Bfile {
        #[arg(long, value_enum, default_value_t = Seq::Main)]
        seq: Seq,
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Bfile)]
        format: Format,
    },
    /// Every deal as a table grouped by denomination set.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
}

fn parse_denoms(s: &str) -> Result<DenomSet, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid denomination {t:?}"))
        })
        .collect()
}

/// Failure of a subcommand, mapped onto an exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch,
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn unsupported(format: Format, command: &str) -> Failure {
    usage(format!(
        "--format {} is not supported by `{command}`",
        format
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    ))
}

fn limits(allow_large: bool) -> Limits {
    Limits { allow_large }
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Verify { max_n, format } => verify(max_n, format, out, err),
        Command::Count {
            n,
            by,
            format,
            allow_large,
        } => count(n, by.into(), format, limits(allow_large), out, err),
        Command::Enumerate {
            n,
            full,
            red_denoms,
            format,
            allow_large,
        } => enumerate(n, full, red_denoms, format, limits(allow_large), out),
        Command::Audit {
            n,
            which,
            allow_large,
        } => audit(n, which, limits(allow_large), out, err),
        Command::Ct { n, poly } => ct(n, poly, out),
        Command::Bfile { seq, max_n, format } => bfile(seq.into(), max_n, format, out),
        Command::Table {
            n,
            format,
            allow_large,
        } => table(n, format, limits(allow_large), out),
    };
    let status = match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Mismatch) => EXIT_MISMATCH,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MISMATCH
        }
    };
    let _ = out.flush();
    status
}

fn verify(max_n: u64, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if format == Format::Bfile {
        return Err(unsupported(format, "verify"));
    }
    if format == Format::Csv {
        writeln!(out, "n,lhs,rhs,ct,enumerated,status")?;
    }
    let base = IdentityPolys::new().base;
    let mut power = LaurentPoly::one();
    let mut failed = false;
    for n in 0..=max_n {
        let lhs = lhs_sum(n);
        let rhs = rhs_sum(n);
        if n > 0 && n <= CT_GUARD {
            power = &power * &base;
        }
        let ct = (n <= CT_GUARD).then(|| {
            power
                .constant_term()
                .to_biguint()
                .expect("constant term of a positive polynomial")
        });
        let enumerated = (n <= u64::from(EXHAUSTIVE_GUARD)).then(|| {
            count_deals(DeckSpec::new(n as u32), Limits::default()).expect("within guard")
        });
        let ok = lhs == rhs && ct.iter().chain(&enumerated).all(|v| *v == lhs);
        let show = |v: &Option<Count>| v.as_ref().map(Count::to_string).unwrap_or_default();

        match format {
            Format::Csv => writeln!(
                out,
                "{n},{lhs},{rhs},{},{},{}",
                show(&ct),
                show(&enumerated),
                if ok { "OK" } else { "MISMATCH" }
            )?,
            _ if ok && ct.is_some() => writeln!(out, "n={n} lhs=rhs=ct={lhs} OK")?,
            _ if ok => writeln!(out, "n={n} lhs=rhs={lhs} OK")?,
            _ => writeln!(
                out,
                "n={n} MISMATCH lhs={lhs} rhs={rhs} ct={} enumerated={}",
                show(&ct),
                show(&enumerated)
            )?,
        }
        if !ok {
            writeln!(
                err,
                "mismatch at n={n}: expected lhs={lhs}, actual rhs={rhs} ct={} enumerated={}",
                show(&ct),
                show(&enumerated)
            )?;
            failed = true;
        }
    }
    if failed {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn count(
    n: u32,
    statistic: Statistic,
    format: Format,
    limits: Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let hist = histogram(DeckSpec::new(n), statistic, limits).map_err(usage)?;
    if format == Format::Csv {
        writeln!(out, "k,count")?;
    }
    let mut failed = false;
    for (k, actual) in hist.iter() {
        let expected = match statistic {
            Statistic::SSize => stat1_count(u64::from(n), k as i64),
            Statistic::RedDistinct => stat2_count(u64::from(n), k as i64),
        }
        .expect("k in 0..=n");
        match format {
            Format::Csv => writeln!(out, "{k},{actual}")?,
            _ => writeln!(out, "{k} {actual}")?,
        }
        if *actual != expected {
            writeln!(
                err,
                "mismatch n={n} k={k} by={statistic}: expected={expected} actual={actual}"
            )?;
            failed = true;
        }
    }
    let total = hist.total();
    let expected_total = lhs_sum(u64::from(n));
    match format {
        Format::Text => writeln!(out, "total {total}")?,
        Format::Csv => writeln!(out, "total,{total}")?,
        Format::Bfile => {}
    }
    if total != expected_total {
        writeln!(
            err,
            "mismatch n={n} total: expected={expected_total} actual={total}"
        )?;
        failed = true;
    }
    if failed {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn enumerate(
    n: u32,
    full: bool,
    red_denoms: Option<DenomSet>,
    format: Format,
    limits: Limits,
    out: &mut dyn Write,
) -> Outcome {
    if format == Format::Bfile {
        return Err(unsupported(format, "enumerate"));
    }
    let spec = DeckSpec::new(n);
    let deals: Vec<Deal> = match (full, red_denoms) {
        (true, _) => enumerate_full_color_deals(spec, limits)
            .map_err(usage)?
            .collect(),
        (false, Some(d)) => enumerate_deals_with_red_denoms(spec, &d, limits)
            .map_err(usage)?
            .collect(),
        (false, None) => enumerate_deals(spec, limits).map_err(usage)?.collect(),
    };
    match format {
        Format::Csv => {
            writeln!(out, "{}", Deal::CSV_HEADER)?;
            for deal in &deals {
                writeln!(out, "{}", deal.to_csv_row())?;
            }
        }
        _ => {
            writeln!(out, "n={n} total={}", deals.len())?;
            for deal in &deals {
                writeln!(out, "{deal}")?;
            }
        }
    }
    Ok(())
}

/// Collects check results; only the first failure is reported.
struct Audit<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    ok: bool,
}

impl Audit<'_> {
    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) -> io::Result<()> {
        if !cond && self.ok {
            let msg = what();
            writeln!(self.out, "FAIL {msg}")?;
            writeln!(self.err, "audit failure: {msg}")?;
            self.ok = false;
        }
        Ok(())
    }
}

fn audit(
    n: u32,
    which: Which,
    limits: Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let spec = DeckSpec::new(n);
    limits.check(spec).map_err(usage)?;
    let mut a = Audit { out, err, ok: true };
    match which {
        Which::Prop1 => audit_prop1(spec, limits, &mut a)?,
        Which::Prop2 => audit_prop2(spec, limits, &mut a)?,
    }
    if a.ok {
        writeln!(a.out, "OK")?;
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn audit_prop1(spec: DeckSpec, limits: Limits, a: &mut Audit<'_>) -> io::Result<()> {
    let n = spec.n();
    writeln!(a.out, "prop1 n={n}")?;
    let params: Vec<Prop1Params> = Prop1Params::all(spec).collect();
    for j in 0..=n as usize {
        let got = params.iter().filter(|p| p.green_in_red.len() == j).count();
        let c = binomial(u64::from(n), j as i64);
        let expected = &c * &c * &c;
        writeln!(a.out, "j={j} params={got} expected={expected}")?;
        a.check(Count::from(got) == expected, || {
            format!("class j={j}: expected={expected} actual={got}")
        })?;
    }

    let mut image = std::collections::BTreeSet::new();
    for p in &params {
        match p.encode() {
            Ok(deal) => {
                let back = Prop1Params::decode(&deal);
                a.check(deal.is_valid() && back.as_ref() == Ok(p), || {
                    format!("round trip params->deal->params at {p}")
                })?;
                image.insert(deal);
            }
            Err(e) => a.check(false, || format!("encode {p}: {e}"))?,
        }
    }
    let full: Vec<Deal> = enumerate_full_color_deals(spec, limits)
        .expect("guard checked")
        .collect();
    for deal in &full {
        let again = Prop1Params::decode(deal).and_then(|p| p.encode());
        a.check(again.as_ref() == Ok(deal), || {
            format!("round trip deal->params->deal at {deal}")
        })?;
    }
    let franel_n = franel(u64::from(n));
    writeln!(
        a.out,
        "params={} image={} full_deals={} franel={franel_n}",
        params.len(),
        image.len(),
        full.len()
    )?;
    a.check(Count::from(params.len()) == franel_n, || {
        format!(
            "parameter count: expected={franel_n} actual={}",
            params.len()
        )
    })?;
    a.check(
        image
            .iter()
            .eq(full.iter().collect::<std::collections::BTreeSet<_>>()),
        || "encode image differs from the full-deck deals".to_string(),
    )
}

fn audit_prop2(spec: DeckSpec, limits: Limits, a: &mut Audit<'_>) -> io::Result<()> {
    let n = spec.n();
    writeln!(a.out, "prop2 n={n}")?;
    let mut total = 0usize;
    for mask in 0u64..(1u64 << n) {
        let d: DenomSet = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let params: Vec<Prop2Params> = Prop2Params::all(spec, &d).expect("D within deck").collect();
        let mut image = std::collections::BTreeSet::new();
        for p in &params {
            match p.encode() {
                Ok(deal) => {
                    let back = Prop2Params::decode(&deal);
                    a.check(deal.is_valid() && back.as_ref() == Ok(p), || {
                        format!("round trip params->deal->params at {p}")
                    })?;
                    image.insert(deal);
                }
                Err(e) => a.check(false, || format!("encode {p}: {e}"))?,
            }
        }
        let target: std::collections::BTreeSet<Deal> =
            enumerate_deals_with_red_denoms(spec, &d, limits)
                .expect("guard checked")
                .collect();
        for deal in &target {
            let again = Prop2Params::decode(deal).and_then(|p| p.encode());
            a.check(again.as_ref() == Ok(deal), || {
                format!("round trip deal->params->deal at {deal}")
            })?;
        }
        let expected = prop2_count(u64::from(n), d.len() as i64).expect("|D| <= n");
        let set = format_set(&d);
        writeln!(
            a.out,
            "D={set} params={} image={} deals={} expected={expected}",
            params.len(),
            image.len(),
            target.len()
        )?;
        a.check(Count::from(params.len()) == expected, || {
            format!("D={set}: expected={expected} actual={}", params.len())
        })?;
        a.check(image == target, || {
            format!("D={set}: encode image differs from the deals with these red denominations")
        })?;
        total += params.len();
    }
    let expected_total = lhs_sum(u64::from(n));
    writeln!(a.out, "total={total} expected={expected_total}")?;
    a.check(Count::from(total) == expected_total, || {
        format!("total: expected={expected_total} actual={total}")
    })
}

fn ct(n: u64, poly: bool, out: &mut dyn Write) -> Outcome {
    let p = base_power(n).map_err(usage)?;
    if poly {
        writeln!(out, "{p}")?;
    } else {
        writeln!(out, "{}", p.constant_term())?;
    }
    Ok(())
}

fn bfile(seq: Sequence, max_n: u64, format: Format, out: &mut dyn Write) -> Outcome {
    for n in 0..=max_n {
        let term = seq.term(n);
        match format {
            Format::Csv => writeln!(out, "{n},{term}")?,
            _ => writeln!(out, "{n} {term}")?,
        }
    }
    Ok(())
}

fn table(n: u32, format: Format, limits: Limits, out: &mut dyn Write) -> Outcome {
    if format == Format::Bfile {
        return Err(unsupported(format, "table"));
    }
    let mut deals: Vec<Deal> = enumerate_deals(DeckSpec::new(n), limits)
        .map_err(usage)?
        .collect();
    // Largest denomination sets first; ties keep enumeration order.
    deals.sort_by_key(|d| std::cmp::Reverse(d.denominations().len()));

    let hand = |d: &Deal, c: Color| {
        let cards: Vec<String> = d.hand(c).iter().map(ToString::to_string).collect();
        format!("[{}]", cards.join(","))
    };
    let header = [
        "denomination set S",
        "#",
        "avoid red",
        "avoid green",
        "avoid blue",
    ];
    let mut rows = Vec::with_capacity(deals.len());
    let mut previous: Option<&DenomSet> = None;
    for (i, deal) in deals.iter().enumerate() {
        let s = format_set(deal.denominations());
        let first_of_group = previous != Some(deal.denominations());
        previous = Some(deal.denominations());
        let s_cell = if first_of_group || format == Format::Csv {
            s
        } else {
            String::new()
        };
        rows.push([
            s_cell,
            (i + 1).to_string(),
            hand(deal, Color::Red),
            hand(deal, Color::Green),
            hand(deal, Color::Blue),
        ]);
    }

    if format == Format::Csv {
        writeln!(out, "s,index,avoid_red,avoid_green,avoid_blue")?;
        for row in &rows {
            // S contains commas, so quote it.
            writeln!(
                out,
                "\"{}\",{},\"{}\",\"{}\",\"{}\"",
                row[0], row[1], row[2], row[3], row[4]
            )?;
        }
        return Ok(());
    }

    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 5]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header))?;
    for row in &rows {
        writeln!(out, "{}", line(row.each_ref().map(String::as_str)))?;
    }
    writeln!(out, "total {}", deals.len())?;
    Ok(())
}
