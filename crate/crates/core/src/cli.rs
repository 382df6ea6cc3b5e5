//! The `tripfact` command line. Every command prints one JSON document.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::action::BlockSystem;
use crate::catalog;
use crate::constructions::{lifts, quotient, restrict, search_cond_c};
use crate::error::{ceiling, Error, Result};
use crate::factorisation::{Criterion, TripleFactorisation};
use crate::group::PermGroup;
use crate::io;
use crate::lattice::SubgroupLattice;
use crate::movement::movement_report;
use crate::reduction::{reduce_with, TripleJson};
use crate::wreath::{embed, verify_wreath_identities, wreath_triple, DEFAULT_MAX_WREATH_ENUMERATION};

#[derive(Parser, Debug)]
#[command(
    name = "tripfact",
    version,
    about = "Triple factorisations G = ABA of permutation groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub limits: Limits,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Limits {
    /// Ceiling on group orders for subgroup lattices and isomorphism searches.
    #[arg(long, global = true, default_value_t = 400)]
    pub max_order: u128,
    /// Ceiling on products enumerated by the brute-force criterion.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_products: u128,
    /// Ceiling on the indices [G:A] and [G:B] of an input triple.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_index: u128,
}

#[derive(Args, Debug, Clone)]
pub struct TripleArgs {
    /// Triple file with G:, A: and B: sections.
    #[arg(long, conflicts_with = "example")]
    pub triple: Option<PathBuf>,
    /// Catalog identifier instead of a file.
    #[arg(long)]
    pub example: Option<String>,
    /// Degree for the Sn catalog families.
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Take the conjugated member of a catalog pair.
    #[arg(long)]
    pub variant: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum CriterionArg {
    Geometric,
    Movement,
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a triple.
    Verify {
        #[command(flatten)]
        input: TripleArgs,
        #[arg(long, value_enum)]
        criterion: Option<CriterionArg>,
    },
    /// Movement numbers and order bounds.
    Bound {
        #[command(flatten)]
        input: TripleArgs,
        /// Include the design certificate when the bound is attained.
        #[arg(long)]
        certificate: bool,
    },
    /// Quotient by a normal subgroup.
    Quotient {
        #[command(flatten)]
        input: TripleArgs,
        #[arg(long)]
        normal: PathBuf,
    },
    /// All lifts (G, C, D) with A ≤ C, B ≤ D.
    Lift {
        #[command(flatten)]
        input: TripleArgs,
        #[arg(long)]
        maximal_only: bool,
    },
    /// Restriction to a subgroup H.
    Restrict {
        #[command(flatten)]
        input: TripleArgs,
        #[arg(long)]
        subgroup: PathBuf,
        /// Also search the sufficient conditions for a normal H with G = AH.
        #[arg(long)]
        sufficient: bool,
    },
    /// Embed an imprimitive group in the wreath product of its block actions.
    Embed {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Wreath product of two triples.
    Wreath {
        #[arg(long)]
        t0: PathBuf,
        #[arg(long)]
        t1: PathBuf,
    },
    /// Reduce a nondegenerate triple with core-free A to a primitive one.
    Reduce {
        #[command(flatten)]
        input: TripleArgs,
        /// Reduce along every maximal chain and compare the outputs.
        #[arg(long)]
        all_chains: bool,
    },
    /// Classify every ordered pair of subgroups of a group.
    Search {
        /// s3, s4, a4, d8, a5, s5, psl32, or a group file.
        #[arg(long)]
        group: String,
    },
    /// Run the regression catalog.
    Catalog,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_triple(args: &TripleArgs, limits: &Limits) -> Result<TripleFactorisation> {
    let t = match (&args.triple, &args.example) {
        (Some(path), _) => io::parse_triple(&read(path)?)?,
        (None, Some(id)) => catalog::triple_by_id(id, args.n, args.variant)
            .ok_or_else(|| Error::Parse(format!("unknown catalog triple {id:?} (n = {})", args.n)))?,
        (None, None) => return Err(Error::Parse("give --triple FILE or --example ID".into())),
    };
    ceiling("[G:A]", limits.max_index, t.g().order() / t.a().order())?;
    ceiling("[G:B]", limits.max_index, t.g().order() / t.b().order())?;
    Ok(t)
}

/// A group file whose degree may be below `degree`; points are padded.
fn read_subgroup(path: &Path, degree: usize) -> Result<PermGroup> {
    let h = io::parse_group(&read(path)?)?;
    if h.degree() > degree {
        return Err(Error::DegreeMismatch {
            left: h.degree(),
            right: degree,
        });
    }
    Ok(h.map_generators(degree, |x| x.extend(degree)))
}

fn group_json(h: &PermGroup) -> Value {
    json!({ "order": h.order().to_string(), "generators": h.generator_strings() })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable report")
}

fn verify(t: &TripleFactorisation, criterion: Option<CriterionArg>, limits: &Limits) -> Result<Value> {
    let mut out = to_value(&TripleJson::new(t)?);
    if let Some(c) = criterion {
        if matches!(c, CriterionArg::Oracle) {
            let (a, b) = (t.a().order(), t.b().order());
            ceiling("|A|²|B| for product enumeration", limits.max_products, a * a * b)?;
        }
        let c = match c {
            CriterionArg::Geometric => Criterion::Geometric,
            CriterionArg::Movement => Criterion::Movement,
            CriterionArg::Oracle => Criterion::Oracle,
        };
        let (status, used) = t.classify_with(c)?;
        out["requested"] = json!({ "status": status, "criterion": used });
    }
    Ok(out)
}

fn search(name: &str, limits: &Limits) -> Result<Value> {
    let g = match catalog::group_by_name(name) {
        Some(g) => g,
        None => io::parse_group(&read(Path::new(name))?)?,
    };
    let lattice = SubgroupLattice::with_limit(&g, limits.max_order)?;
    let n = lattice.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let statuses = pairs
        .par_iter()
        .map(|&(i, j)| TripleFactorisation::new(g.clone(), lattice.get(i).clone(), lattice.get(j).clone())?.status())
        .collect::<Result<Vec<_>>>()?;
    let mut counts = std::collections::BTreeMap::new();
    for s in &statuses {
        *counts.entry(s.as_str()).or_insert(0usize) += 1;
    }
    let table: Vec<Value> = pairs
        .iter()
        .zip(&statuses)
        .map(|(&(i, j), s)| json!({ "a": i, "b": j, "status": s }))
        .collect();
    let subgroups: Vec<Value> = (0..n)
        .map(|i| {
            let mut v = group_json(lattice.get(i));
            v["index"] = json!(i);
            v
        })
        .collect();
    Ok(json!({
        "group": group_json(&g),
        "subgroups": subgroups,
        "counts": counts,
        "pairs": table,
    }))
}

fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let limits = &cli.limits;
    let value = match &cli.command {
        Command::Verify { input, criterion } => verify(&read_triple(input, limits)?, *criterion, limits)?,
        Command::Bound { input, certificate } => {
            let t = read_triple(input, limits)?;
            let mut r = movement_report(&t)?;
            if !certificate {
                r.certificate = None;
            }
            to_value(&r)
        }
        Command::Quotient { input, normal } => {
            let t = read_triple(input, limits)?;
            let n = read_subgroup(normal, t.g().degree())?;
            let q = quotient(&t, &n)?;
            json!({
                "n": group_json(&q.n),
                "quotient": TripleJson::new(&q.quotient)?,
                "warning": q.warning,
            })
        }
        Command::Lift { input, maximal_only } => {
            let t = read_triple(input, limits)?;
            let all: Vec<Value> = lifts(&t, *maximal_only, limits.max_order)?
                .iter()
                .map(|l| json!({ "c": group_json(&l.c), "d": group_json(&l.d), "status": l.status }))
                .collect();
            json!({ "triple": TripleJson::new(&t)?, "lifts": all })
        }
        Command::Restrict {
            input,
            subgroup,
            sufficient,
        } => {
            let t = read_triple(input, limits)?;
            let h = read_subgroup(subgroup, t.g().degree())?;
            let (r, status) = restrict(&t, &h)?;
            let mut out = json!({
                "restricted": TripleJson::new(&r.restricted)?,
                "status": status,
                "h_in_ab": r.h_in_ab,
                "h_in_ab_witness": r.h_in_ab_witness,
            });
            if *sufficient {
                out["sufficient"] = match search_cond_c(&t, &h, 8)? {
                    Some((d, s)) => json!({
                        "sigmas": d.sigmas.iter().map(|x| x.to_cycle_string()).collect::<Vec<_>>(),
                        "taus": d.b_tau_gens.iter().map(|x| x.to_cycle_string()).collect::<Vec<_>>(),
                        "conditions": s,
                    }),
                    None => Value::Null,
                };
            }
            out
        }
        Command::Embed { group, blocks, a, b } => {
            let g = io::parse_group(&read(group)?)?;
            let sigma = BlockSystem::new(g.degree(), io::parse_blocks(&read(blocks)?)?)?;
            let a = read_subgroup(a, g.degree())?;
            let b = read_subgroup(b, g.degree())?;
            let wc = embed(&g, &sigma, &a, &b)?;
            let phi: Vec<Value> = g
                .generators()
                .iter()
                .map(|x| json!({ "g": x.to_cycle_string(), "phi": wc.phi(x).to_cycle_string() }))
                .collect();
            json!({
                "alpha": wc.alpha + 1,
                "block_size": wc.block_size(),
                "num_blocks": wc.num_blocks(),
                "g0": group_json(&wc.g0),
                "g1": group_json(&wc.g1),
                "a0": group_json(&wc.a0),
                "a1": group_json(&wc.a1),
                "b0": group_json(&wc.b0),
                "b1": group_json(&wc.b1),
                "transversal": wc.transversal.iter().map(|t| t.to_cycle_string()).collect::<Vec<_>>(),
                "transversal_in_b": wc.transversal_in_b,
                "phi": phi,
                "phi_a_check": wc.phi_a_check.map_or("unchecked".to_string(), |b| b.to_string()),
                "phi_b_check": wc.phi_b_check.map_or("unchecked".to_string(), |b| b.to_string()),
                "report": wc.verify_embedding(50, 0)?,
            })
        }
        Command::Wreath { t0, t1 } => {
            let t0 = io::parse_triple(&read(t0)?)?;
            let t1 = io::parse_triple(&read(t1)?)?;
            let wt = wreath_triple(&t0, &t1)?;
            let identities = if wt.w.order() <= DEFAULT_MAX_WREATH_ENUMERATION {
                to_value(&verify_wreath_identities(&wt)?)
            } else {
                Value::Null
            };
            json!({
                "t0": TripleJson::new(&t0)?,
                "t1": TripleJson::new(&t1)?,
                "wreath": TripleJson::new(&wt.triple)?,
                "identities": identities,
            })
        }
        Command::Reduce { input, all_chains } => {
            let t = read_triple(input, limits)?;
            to_value(&reduce_with(&t, *all_chains, limits.max_order)?.to_json()?)
        }
        Command::Search { group } => search(group, limits)?,
        Command::Catalog => {
            let results = catalog::run_all();
            let pass = results.iter().all(|r| r.pass);
            return Ok((json!({ "pass": pass, "entries": results }), pass));
        }
    };
    Ok((value, true))
}

/// Runs the command line; returns the exit code and the JSON text.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok((value, pass)) => (
            if pass { 0 } else { 1 },
            serde_json::to_string_pretty(&value).expect("json"),
        ),
        Err(e) => {
            let value = json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            (e.exit_code(), serde_json::to_string_pretty(&value).expect("json"))
        }
    }
}
