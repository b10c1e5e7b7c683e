//! Line-oriented instance files.
//!
//! ```text
//! [ring]
//! char = 32003
//! vars = x, y
//! weights = 1, 1
//!
//! [module]
//! rank = 1
//! gen = x
//! gen = y
//!
//! [options]
//! n_max = 6
//! window = 3
//! max_degree = 64
//! seed = 0
//! prime = x, y
//! ```
//!
//! `char = 0` selects the rationals. Each `gen` line is one column of the
//! generator matrix; each `prime` line lists generators of a minimal prime of
//! `R/F_e(E)` for the generic complete-intersection test.

use std::fmt;

use rees_core::{
    parse_polynomial, Error, Field, FreeModule, ModuleElement, MonomialOrder, Polynomial,
    Rationals, ReesContext, Result, Ring, RingRef, Submodule,
};

pub const DEFAULT_CHAR: u32 = 32003;
pub const DEFAULT_MAX_DEGREE: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub n_max: usize,
    pub window: usize,
    pub max_degree: u32,
    pub seed: u64,
    pub primes: Vec<Vec<String>>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            n_max: rees_core::asymptotics::DEFAULT_N_MAX,
            window: rees_core::asymptotics::DEFAULT_WINDOW,
            max_degree: DEFAULT_MAX_DEGREE,
            seed: 0,
            primes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDecl {
    pub ring: RingDecl,
    pub rank: usize,
    pub generators: Vec<Vec<String>>,
    pub options: Options,
}

/// A validated instance over a concrete field.
pub struct Instance<F: Field> {
    pub ring: RingRef<F>,
    pub module: Submodule<F>,
    pub primes: Vec<Submodule<F>>,
}

impl<F: Field> Instance<F> {
    pub fn context(&self) -> Result<ReesContext<F>> {
        ReesContext::new(&self.module)
    }

    pub fn primes(&self) -> Option<&[Submodule<F>]> {
        (!self.primes.is_empty()).then_some(self.primes.as_slice())
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Ring,
    Module,
    Options,
}

/// A comma-separated entry with its 1-based column.
fn split_list(value: &str, col: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in value.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((piece.trim().to_string(), col + start + lead));
        start += piece.len() + 1;
    }
    out
}

fn number<T: std::str::FromStr>(value: &str, line: usize, col: usize, what: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Parse {
        line,
        column: col,
        message: format!("{what} must be a non-negative integer, got {value:?}"),
    })
}

struct Located {
    text: String,
    line: usize,
    column: usize,
}

impl InstanceDecl {
    pub fn parse(text: &str) -> Result<InstanceDecl> {
        let mut section = Section::None;
        let mut characteristic = DEFAULT_CHAR;
        let mut vars: Option<Vec<String>> = None;
        let mut weights: Option<(Vec<u32>, usize)> = None;
        let mut rank: Option<usize> = None;
        let mut gens: Vec<Vec<Located>> = Vec::new();
        let mut primes: Vec<Vec<Located>> = Vec::new();
        let mut options = Options::default();
        let err = |line: usize, column: usize, message: String| Error::Parse {
            line,
            column,
            message,
        };

        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            let indent = content.len() - content.trim_start().len();
            let body = content.trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| err(line, indent + body.len(), "expected ']'".into()))?;
                section = match name.trim() {
                    "ring" => Section::Ring,
                    "module" => Section::Module,
                    "options" => Section::Options,
                    other => {
                        return Err(err(line, indent + 2, format!("unknown section [{other}]")))
                    }
                };
                continue;
            }
            let Some(eq) = body.find('=') else {
                return Err(err(line, indent + 1, "expected `key = value`".into()));
            };
            let key = body[..eq].trim();
            let value_raw = &body[eq + 1..];
            let value = value_raw.trim();
            let vcol = indent + eq + 2 + (value_raw.len() - value_raw.trim_start().len());
            let kcol = indent + 1;
            match (section, key) {
                (Section::None, _) => {
                    return Err(err(
                        line,
                        kcol,
                        format!("`{key}` appears before any section"),
                    ))
                }
                (Section::Ring, "char") => characteristic = number(value, line, vcol, "char")?,
                (Section::Ring, "vars") => {
                    let names: Vec<String> = split_list(value, vcol)
                        .into_iter()
                        .map(|(s, _)| s)
                        .collect();
                    vars = Some(names);
                }
                (Section::Ring, "weights") => {
                    let ws = split_list(value, vcol)
                        .into_iter()
                        .map(|(s, c)| number(&s, line, c, "a weight"))
                        .collect::<Result<Vec<u32>>>()?;
                    weights = Some((ws, line));
                }
                (Section::Module, "rank") => rank = Some(number(value, line, vcol, "rank")?),
                (Section::Module, "gen") => gens.push(located(value, line, vcol)),
                (Section::Options, "n_max") => options.n_max = number(value, line, vcol, "n_max")?,
                (Section::Options, "window") => {
                    options.window = number(value, line, vcol, "window")?
                }
                (Section::Options, "max_degree") => {
                    options.max_degree = number(value, line, vcol, "max_degree")?
                }
                (Section::Options, "seed") => options.seed = number(value, line, vcol, "seed")?,
                (Section::Options, "prime") => primes.push(located(value, line, vcol)),
                _ => {
                    return Err(err(
                        line,
                        kcol,
                        format!("unknown key `{key}` in this section"),
                    ))
                }
            }
        }

        let vars = vars.ok_or_else(|| err(1, 1, "missing `vars` in [ring]".into()))?;
        let weights = match weights {
            Some((ws, line)) if ws.len() != vars.len() => {
                return Err(err(
                    line,
                    1,
                    format!("{} weights for {} variables", ws.len(), vars.len()),
                ))
            }
            Some((ws, _)) => ws,
            None => vec![1; vars.len()],
        };
        let rank = rank.ok_or_else(|| err(1, 1, "missing `rank` in [module]".into()))?;
        if gens.is_empty() {
            return Err(err(1, 1, "no `gen` lines in [module]".into()));
        }
        // syntax check in a ring that accepts every coefficient
        let probe = Ring::with_weights(
            Rationals,
            vars.clone(),
            weights.clone(),
            MonomialOrder::Grevlex,
        )?
        .into_ref();
        for g in &gens {
            if g.len() != rank {
                return Err(err(
                    g[0].line,
                    1,
                    format!("generator has {} entries but rank is {rank}", g.len()),
                ));
            }
            check_entries(&probe, g)?;
        }
        for p in &primes {
            check_entries(&probe, p)?;
        }
        options.primes = primes
            .into_iter()
            .map(|p| p.into_iter().map(|e| e.text).collect())
            .collect();
        Ok(InstanceDecl {
            ring: RingDecl {
                characteristic,
                vars,
                weights,
            },
            rank,
            generators: gens
                .into_iter()
                .map(|g| g.into_iter().map(|e| e.text).collect())
                .collect(),
            options,
        })
    }

    /// Builds ring and module over `field`, then checks the standing
    /// hypotheses.
    pub fn build<F: Field>(&self, field: F) -> Result<Instance<F>> {
        let ring = Ring::with_weights(
            field,
            self.ring.vars.clone(),
            self.ring.weights.clone(),
            MonomialOrder::Grevlex,
        )?
        .with_max_degree(self.options.max_degree)
        .into_ref();
        let ambient = FreeModule::new(&ring, self.rank).into_ref();
        let mut gens = Vec::with_capacity(self.generators.len());
        for (k, g) in self.generators.iter().enumerate() {
            let comps: Vec<Polynomial<F>> = g
                .iter()
                .map(|s| parse_polynomial(&ring, s))
                .collect::<Result<_>>()?;
            let v = ModuleElement::from_components(&ambient, &comps)?;
            if !v.is_homogeneous() {
                return Err(Error::Validation(format!(
                    "generator {} ({}) is not column-graded",
                    k + 1,
                    g.join(", ")
                )));
            }
            gens.push(v);
        }
        let module = Submodule::new(&ambient, gens)?;
        let primes = self
            .options
            .primes
            .iter()
            .map(|p| {
                let ps: Vec<Polynomial<F>> = p
                    .iter()
                    .map(|s| parse_polynomial(&ring, s))
                    .collect::<Result<_>>()?;
                Submodule::ideal(&ring, &ps)
            })
            .collect::<Result<_>>()?;
        let instance = Instance {
            ring,
            module,
            primes,
        };
        instance.context()?;
        Ok(instance)
    }
}

fn located(value: &str, line: usize, col: usize) -> Vec<Located> {
    split_list(value, col)
        .into_iter()
        .map(|(text, column)| Located { text, line, column })
        .collect()
}

fn check_entries(ring: &RingRef<Rationals>, entries: &[Located]) -> Result<()> {
    for e in entries {
        if let Err(Error::Parse {
            column, message, ..
        }) = parse_polynomial(ring, &e.text)
        {
            return Err(Error::Parse {
                line: e.line,
                column: e.column + column - 1,
                message,
            });
        }
    }
    Ok(())
}

impl fmt::Display for InstanceDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<String> = self.ring.weights.iter().map(|w| w.to_string()).collect();
        writeln!(f, "[ring]")?;
        writeln!(f, "char = {}", self.ring.characteristic)?;
        writeln!(f, "vars = {}", self.ring.vars.join(", "))?;
        writeln!(f, "weights = {}", weights.join(", "))?;
        writeln!(f)?;
        writeln!(f, "[module]")?;
        writeln!(f, "rank = {}", self.rank)?;
        for g in &self.generators {
            writeln!(f, "gen = {}", g.join(", "))?;
        }
        writeln!(f)?;
        writeln!(f, "[options]")?;
        writeln!(f, "n_max = {}", self.options.n_max)?;
        writeln!(f, "window = {}", self.options.window)?;
        writeln!(f, "max_degree = {}", self.options.max_degree)?;
        writeln!(f, "seed = {}", self.options.seed)?;
        for p in &self.options.primes {
            writeln!(f, "prime = {}", p.join(", "))?;
        }
        Ok(())
    }
}
