//! The `rwords` command line.
//!
//! Exit status: 0 success, 1 not found / unknown within bounds, 2 input
//! error, 3 invariant failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};

use super::{fixtures, PresentationFile};
use crate::alphabet::Alphabet;
use crate::coproduct::CoproductSpec;
use crate::elimination::{express_letter_irreducible, verify_generation, Bounds, HopfPresentation};
use crate::error::Error;
use crate::polynomial::{Field, TensorPolynomial};
use crate::reduction::{
    check_delta_stabilizes_ideal, DeltaIdealStatus, ReducibilityAnswer, TruncatedSpan,
};
use crate::words::{lex_compare, prime_factorization, reduction_compare, rfactor, Word};

#[derive(Debug, Parser)]
#[command(
    name = "rwords",
    version,
    about = "Reduction order, normal forms and letter elimination in free algebras"
)]
struct Cli {
    /// Presentation file (JSON)
    #[arg(long, global = true)]
    file: Option<String>,
    /// Bundled presentation: example_3_2, mirror_pair, z2_grouplike,
    /// augmented_sweedler, divided_power
    #[arg(long, global = true, conflicts_with = "file")]
    example: Option<String>,
    /// Ad hoc alphabet in increasing order, e.g. "x x* y" (all degree 0)
    #[arg(long, global = true, conflicts_with_all = ["file", "example"])]
    letters: Option<String>,
    /// Length bound L
    #[arg(long, global = true, env = "RWORDS_BOUND")]
    bound: Option<usize>,
    /// Slack S
    #[arg(long, global = true, env = "RWORDS_SLACK")]
    slack: Option<usize>,
    /// Longest word checked by verify-generation
    #[arg(long, global = true, env = "RWORDS_CHECK_LEN")]
    check_len: Option<usize>,
    /// Coefficient field: `q` or a prime
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two words in the reduction and lexicographic orders
    Compare { first: String, second: String },
    /// Reduction-factorization of a word
    Rfactor { word: String },
    /// Ascending prime factorization of a word
    Primes { word: String },
    /// Leading word of a polynomial
    Lw { poly: String },
    /// Normal form modulo the truncated ideal span
    Nf { poly: String },
    /// Words without a reducibility certificate
    IrrWords {
        #[arg(long)]
        maxlen: usize,
    },
    /// Partition of the letters into certified reducible and uncertified
    IrrLetters,
    /// Coproduct of a word
    Coprod {
        word: String,
        #[arg(long)]
        classify: bool,
    },
    /// Validate the coproduct specification
    CheckSpec,
    /// Check that the coproduct maps the ideal into I⊗A + A⊗I
    CheckDeltaIdeal,
    /// Express a letter through smaller uncertified letters
    Express { letter: String },
    /// Full generation report
    VerifyGeneration {
        #[arg(long)]
        json: bool,
    },
    /// Print the truncated span basis
    Span,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_status(status: i32, stdout: String) -> Self {
        CommandOutput {
            status,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(status: i32, stderr: String) -> Self {
        CommandOutput {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotFoundWithinBounds { .. } => 1,
        Error::Invariant(_) | Error::BoundViolation(_) | Error::Inconsistent(_) => 3,
        _ => 2,
    }
}

struct Session {
    hopf: HopfPresentation,
    bounds: Bounds,
}

impl Session {
    fn alphabet(&self) -> &Alphabet {
        &self.hopf.alphabet
    }

    fn field(&self) -> Field {
        self.hopf.field
    }

    fn word(&self, text: &str) -> Result<Word, Error> {
        self.alphabet().parse_word(text)
    }

    fn show(&self, w: &Word) -> String {
        w.display(self.alphabet()).to_string()
    }

    fn span(&self) -> Result<TruncatedSpan, Error> {
        self.hopf.span(&self.bounds)
    }
}

fn load(cli: &Cli) -> Result<Session, CommandOutput> {
    let input_error = |msg: String| CommandOutput::failure(2, msg);
    let text = match (&cli.file, &cli.example) {
        (Some(path), _) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| input_error(format!("cannot read {path}: {e}\n")))?,
        ),
        (None, Some(name)) => Some(
            fixtures::get(name)
                .ok_or_else(|| input_error(format!("unknown example `{name}`\n")))?
                .to_string(),
        ),
        (None, None) => None,
    };
    let field = match &cli.field {
        Some(f) => Some(Field::parse(f).map_err(|e| input_error(format!("{e}\n")))?),
        None => None,
    };
    let diagnostics =
        |ds: Vec<super::Diagnostic>| input_error(ds.iter().map(|d| format!("{d}\n")).collect());
    let hopf = match (text, &cli.letters) {
        (Some(text), _) => {
            let mut file = PresentationFile::from_json(&text).map_err(diagnostics)?;
            if let Some(f) = field {
                file.field = f;
            }
            file.to_presentation(&text).map_err(diagnostics)?
        }
        (None, Some(letters)) => {
            let names: Vec<&str> = letters.split_whitespace().collect();
            let field = field.unwrap_or_default();
            let alphabet =
                Alphabet::from_names(&names).map_err(|e| input_error(format!("{e}\n")))?;
            let spec = CoproductSpec::unit_for_all(&alphabet, field);
            HopfPresentation::new(
                alphabet,
                field,
                spec,
                vec![],
                BTreeMap::new(),
                BTreeMap::new(),
                Bounds::default(),
            )
            .map_err(|e| input_error(format!("{e}\n")))?
        }
        (None, None) => {
            return Err(input_error(
                "no alphabet: pass --file, --example or --letters\n".into(),
            ))
        }
    };
    let file = hopf.bounds;
    let bounds = Bounds {
        length: cli.bound.unwrap_or(file.length),
        slack: cli.slack.unwrap_or(file.slack),
        check_len: cli.check_len.unwrap_or(file.check_len),
    };
    Ok(Session { hopf, bounds })
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "LESS",
        std::cmp::Ordering::Equal => "EQUAL",
        std::cmp::Ordering::Greater => "GREATER",
    }
}

fn tensor_lines(s: &Session, t: &TensorPolynomial) -> String {
    let mut out = String::new();
    for (right, left) in t.group_by_right().iter().rev() {
        let _ = writeln!(out, "({}) ⊗ {}", left.display(s.alphabet()), s.show(right));
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    out
}

fn execute(s: &Session, command: &Command) -> Result<CommandOutput, Error> {
    let a = s.alphabet();
    let field = s.field();
    Ok(match command {
        Command::Compare { first, second } => {
            let (u, v) = (s.word(first)?, s.word(second)?);
            CommandOutput::ok(format!(
                "reduction: {}, lex: {}\n",
                ordering_name(reduction_compare(&u, &v)),
                ordering_name(lex_compare(&u, &v))
            ))
        }
        Command::Rfactor { word } => {
            let rf = rfactor(&s.word(word)?)?;
            CommandOutput::ok(format!(
                "left: {}, right: {}\n",
                s.show(&rf.left),
                s.show(&rf.right)
            ))
        }
        Command::Primes { word } => {
            let parts: Vec<String> = prime_factorization(&s.word(word)?)?
                .iter()
                .map(|p| format!("({})", s.show(p)))
                .collect();
            CommandOutput::ok(format!("{}\n", parts.join(" ")))
        }
        Command::Lw { poly } => {
            let p = a.parse_polynomial(poly, field)?;
            CommandOutput::ok(format!("{}\n", s.show(p.leading_word()?)))
        }
        Command::Nf { poly } => {
            let p = a.parse_polynomial(poly, field)?;
            let nf = s.span()?.normal_form(&p)?;
            CommandOutput::ok(format!("{}\n", nf.display(a)))
        }
        Command::IrrWords { maxlen } => {
            let words = s.span()?.irreducible_words_up_to(*maxlen)?;
            CommandOutput::ok(words.iter().map(|w| format!("{}\n", s.show(w))).collect())
        }
        Command::IrrLetters => {
            let (red, unc) = s.span()?.letter_partition();
            let names = |v: &[crate::alphabet::LetterId]| {
                v.iter().map(|&x| a.name(x)).collect::<Vec<_>>().join(" ")
            };
            CommandOutput::ok(format!(
                "reducible: {}\nuncertified: {}\n",
                names(&red),
                names(&unc)
            ))
        }
        Command::Coprod { word, classify } => {
            let w = s.word(word)?;
            let spec = &s.hopf.coproduct;
            if !classify {
                return Ok(CommandOutput::ok(tensor_lines(s, &spec.delta_word(&w)?)));
            }
            let c = spec.classify_delta(&w, a)?;
            let mut out = String::new();
            let _ = write!(out, "head:\n{}", tensor_lines(s, &c.head));
            let _ = write!(out, "group:\n{}", tensor_lines(s, &c.group));
            if let Some(m) = &c.middle {
                let _ = write!(out, "middle:\n{}", tensor_lines(s, m));
            }
            let _ = writeln!(out, "tail:");
            for (left, right) in &c.tail {
                let _ = writeln!(out, "({}) ⊗ {}", left.display(a), s.show(right));
            }
            let descent = spec.check_degree_length_descent(&w, a)?;
            let _ = writeln!(
                out,
                "degree-length descent: {}",
                if descent.holds { "holds" } else { "fails" }
            );
            CommandOutput::with_status(if descent.holds { 0 } else { 3 }, out)
        }
        Command::CheckSpec => {
            let v = s.hopf.coproduct.validate(a)?;
            if v.is_empty() {
                CommandOutput::ok(format!("valid: {} letters\n", a.len()))
            } else {
                CommandOutput::with_status(2, v.iter().map(|m| format!("{m}\n")).collect())
            }
        }
        Command::CheckDeltaIdeal => {
            let span = s.span()?;
            match check_delta_stabilizes_ideal(&span, &s.hopf.coproduct, s.bounds.check_len)? {
                DeltaIdealStatus::Holds => CommandOutput::ok("holds\n".into()),
                DeltaIdealStatus::Fails { witness } => {
                    CommandOutput::with_status(3, format!("fails: {}\n", witness.display(a)))
                }
                DeltaIdealStatus::Inconclusive { element } => CommandOutput::with_status(
                    1,
                    format!(
                        "inconclusive: Δ({}) exceeds the bound\n",
                        element.display(a)
                    ),
                ),
            }
        }
        Command::Express { letter } => {
            let x = a.id(letter)?;
            let attempt = |b: &Bounds| -> Result<_, Error> {
                let span = s.hopf.span(b)?;
                match span.is_reducible(&Word::letter(x))? {
                    ReducibilityAnswer::Unknown => Ok(None),
                    ReducibilityAnswer::Certified(_) => {
                        express_letter_irreducible(x, &span).map(Some)
                    }
                }
            };
            let result = match attempt(&s.bounds) {
                Err(Error::NotFoundWithinBounds { .. }) => {
                    let wider = Bounds {
                        length: s.bounds.length + 2,
                        slack: s.bounds.slack + 1,
                        ..s.bounds
                    };
                    log::warn!(
                        "no witness for `{letter}`; retrying at L = {}, S = {}",
                        wider.length,
                        wider.slack
                    );
                    attempt(&wider)?
                }
                other => other?,
            };
            match result {
                Some(w) => CommandOutput::ok(format!("{letter} = {}\n", w.expression.display(a))),
                None => CommandOutput::with_status(
                    1,
                    format!("{letter}: not certified reducible (unknown)\n"),
                ),
            }
        }
        Command::VerifyGeneration { json } => {
            let report = verify_generation(&s.hopf, &s.bounds)?;
            let status = if report.passed() {
                0
            } else if !report.not_found.is_empty() {
                1
            } else {
                3
            };
            let out = if *json {
                format!("{}\n", report.to_json())
            } else {
                report.to_text()
            };
            CommandOutput::with_status(status, out)
        }
        Command::Span => CommandOutput::ok(s.span()?.export()),
    })
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                CommandOutput::ok(text)
            } else {
                CommandOutput::failure(2, text)
            };
        }
    };
    let session = match load(&cli) {
        Ok(s) => s,
        Err(out) => return out,
    };
    match execute(&session, &cli.command) {
        Ok(out) => out,
        Err(e) => CommandOutput::failure(exit_code(&e), format!("error: {e}\n")),
    }
}
