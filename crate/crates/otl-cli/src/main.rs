use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use otl_core::calibrated::{check_shape, NumericSeed};
use otl_core::llt::{
    block_of, blocks_of, decomposition_from_delta, delta_matrix, simple_dim_lower_bounds,
    simple_dims_from, GradedMatrix,
};
use otl_core::paths::{coxeter_length, degree_klr, degree_tiles, ladder_tableaux, reduced_word, signed_permutation, tiling, tile_degree};
use otl_core::tableaux::{enumerate_std, residue_seq, shapes, std_count, MAX_N};
use otl_core::{ParamConfig, Shape, StandardTableau};

#[derive(Parser)]
#[command(name = "otl", version, about = "Graded decomposition data for orientifold Temperley-Lieb algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(clap::Args)]
struct SizeArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    n: usize,
}

#[derive(clap::Args)]
struct MatrixArgs {
    #[command(flatten)]
    base: SizeArgs,
    /// Restrict to the block containing this shape, e.g. "(16,alpha1)".
    #[arg(long)]
    block_of: Option<Shape>,
}

#[derive(clap::Args)]
struct TableauArgs {
    #[arg(long)]
    config: PathBuf,
    /// A tableau such as "(7,alpha2):[-9,1,2,3,4,5,6,7,8]".
    #[arg(long)]
    tableau: StandardTableau,
}

#[derive(Subcommand)]
enum Command {
    /// Check a parameter file against the standing assumptions.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// List the shapes of size n with their numbers of standard tableaux.
    Shapes {
        #[arg(long)]
        n: usize,
    },
    /// List the standard tableaux of one shape.
    Tableaux {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        shape: Shape,
        /// Adds residue sequences and degrees.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Graded Delta-matrix.
    Delta(MatrixArgs),
    /// Conjectural graded decomposition matrix N with its cofactor A.
    Decomp(MatrixArgs),
    /// Delta-equivalence classes.
    Blocks(SizeArgs),
    /// Ladder tableaux grouped by residue class.
    Ladders(SizeArgs),
    /// Ladder lower bounds and conjectural simple graded dimensions.
    Bounds(SizeArgs),
    /// Numerical check of the calibrated representations.
    CalibratedCheck {
        #[command(flatten)]
        base: SizeArgs,
        /// Only this shape (default: every shape).
        #[arg(long)]
        shape: Option<Shape>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also check the blob quotient relations.
        #[arg(long)]
        blob: bool,
    },
    /// Degree of a tableau, by tiles and by the generator rules.
    Degree(TableauArgs),
    /// Reduced word of a tableau.
    Word(TableauArgs),
}

#[derive(Debug)]
enum CliError {
    /// Bad input: exit status 2.
    Usage(String),
    /// A check failed: exit status 1.
    Failed(String),
}

type CliResult = Result<(), CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(out.as_bytes());
    let _ = lock.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: &Path) -> Result<ParamConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    ParamConfig::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Loads a config and refuses one that breaks the standing assumptions.
fn valid_config(path: &Path) -> Result<ParamConfig, CliError> {
    let cfg = load_config(path)?;
    let violations = cfg.validate();
    if violations.is_empty() {
        Ok(cfg)
    } else {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(CliError::Failed(format!("invalid parameters: {}", list.join("; "))))
    }
}

fn check_n(n: usize) -> CliResult {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(usage(format!("--n must lie in 1..={MAX_N}")))
    }
}

fn check_shape_arg(n: usize, shape: Shape) -> CliResult {
    shape.check(n).map_err(usage)
}

fn push_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("values serialize"));
    out.push('\n');
}

fn matrix_json(m: &GradedMatrix, conjectural: bool) -> Value {
    let mut v = serde_json::to_value(m).expect("matrix serializes");
    if conjectural {
        v["conjectural"] = json!(true);
    }
    v
}

fn run(cli: &Cli, out: &mut String) -> CliResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { config } => cmd_validate(config, fmt, out),
        Command::Shapes { n } => cmd_shapes(*n, fmt, out),
        Command::Tableaux { n, shape, config } => cmd_tableaux(*n, *shape, config.as_deref(), fmt, out),
        Command::Delta(args) => cmd_delta(args, fmt, out),
        Command::Decomp(args) => cmd_decomp(args, fmt, out),
        Command::Blocks(args) => cmd_blocks(args, fmt, out),
        Command::Ladders(args) => cmd_ladders(args, fmt, out),
        Command::Bounds(args) => cmd_bounds(args, fmt, out),
        Command::CalibratedCheck { base, shape, seed, tol, blob } => {
            cmd_calibrated(base, *shape, *seed, *tol, *blob, fmt, out)
        }
        Command::Degree(args) => cmd_degree(args, fmt, out),
        Command::Word(args) => cmd_word(args, fmt, out),
    }
}

fn cmd_validate(config: &Path, fmt: Format, out: &mut String) -> CliResult {
    let cfg = load_config(config)?;
    let violations: Vec<String> = cfg.validate().iter().map(|v| v.to_string()).collect();
    match fmt {
        Format::Json => push_json(out, &json!({ "valid": violations.is_empty(), "violations": violations })),
        Format::Tsv => {
            if violations.is_empty() {
                out.push_str("valid\n");
            }
            for v in &violations {
                out.push_str(&format!("violation\t{v}\n"));
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} violation(s)", violations.len())))
    }
}

fn cmd_shapes(n: usize, fmt: Format, out: &mut String) -> CliResult {
    check_n(n)?;
    let rows: Vec<(Shape, u64)> = shapes(n).into_iter().map(|s| (s, std_count(n, s))).collect();
    match fmt {
        Format::Json => push_json(
            out,
            &Value::Array(
                rows.iter()
                    .map(|(s, c)| json!({ "shape": s.to_string(), "std_count": c }))
                    .collect(),
            ),
        ),
        Format::Tsv => {
            out.push_str("shape\tstd_count\n");
            for (s, c) in rows {
                out.push_str(&format!("{s}\t{c}\n"));
            }
        }
    }
    Ok(())
}

/// Residue labels and degree of a listed tableau.
type Annotation = (Vec<String>, i64);

fn cmd_tableaux(n: usize, shape: Shape, config: Option<&Path>, fmt: Format, out: &mut String) -> CliResult {
    check_n(n)?;
    check_shape_arg(n, shape)?;
    let cfg = config.map(valid_config).transpose()?;
    let all = enumerate_std(n, shape).map_err(usage)?;
    let rows: Vec<(String, Option<Annotation>)> = all
        .iter()
        .map(|t| {
            let extra = cfg.as_ref().map(|cfg| {
                let res = residue_seq(t, cfg).iter().map(|r| cfg.format_residue(*r)).collect();
                (res, degree_tiles(t, cfg))
            });
            (t.to_string(), extra)
        })
        .collect();
    match fmt {
        Format::Json => {
            let items = rows
                .iter()
                .map(|(t, extra)| match extra {
                    Some((res, deg)) => json!({ "tableau": t, "residues": res, "degree": deg }),
                    None => json!({ "tableau": t }),
                })
                .collect();
            push_json(out, &Value::Array(items));
        }
        Format::Tsv => {
            for (t, extra) in rows {
                match extra {
                    Some((res, deg)) => out.push_str(&format!("{t}\t{}\t{deg}\n", res.join(" "))),
                    None => out.push_str(&format!("{t}\n")),
                }
            }
        }
    }
    Ok(())
}

fn block_delta(args: &MatrixArgs) -> Result<(ParamConfig, GradedMatrix), CliError> {
    let (n, cfg) = (args.base.n, valid_config(&args.base.config)?);
    check_n(n)?;
    let delta = match args.block_of {
        Some(shape) => {
            check_shape_arg(n, shape)?;
            let block = block_of(n, &cfg, shape).map_err(usage)?;
            delta_matrix(n, &cfg, Some(&block)).map_err(usage)?
        }
        None => delta_matrix(n, &cfg, None).map_err(usage)?,
    };
    Ok((cfg, delta))
}

fn cmd_delta(args: &MatrixArgs, fmt: Format, out: &mut String) -> CliResult {
    let (_, delta) = block_delta(args)?;
    match fmt {
        Format::Json => push_json(out, &matrix_json(&delta, false)),
        Format::Tsv => out.push_str(&delta.to_string()),
    }
    Ok(())
}

fn cmd_decomp(args: &MatrixArgs, fmt: Format, out: &mut String) -> CliResult {
    let (_, delta) = block_delta(args)?;
    let decomp = decomposition_from_delta(&delta).map_err(usage)?;
    for (r, c) in &decomp.negative_entries {
        eprintln!("warning: N{r},{c} has a negative coefficient");
    }
    match fmt {
        Format::Json => push_json(
            out,
            &json!({
                "N": matrix_json(&decomp.n, true),
                "A": matrix_json(&decomp.a, true),
                "negative_entries": decomp.negative_entries,
            }),
        ),
        Format::Tsv => {
            out.push_str("# N (conjectural)\n");
            out.push_str(&decomp.n.to_string());
            out.push_str("# A (conjectural)\n");
            out.push_str(&decomp.a.to_string());
        }
    }
    Ok(())
}

fn cmd_blocks(args: &SizeArgs, fmt: Format, out: &mut String) -> CliResult {
    let cfg = valid_config(&args.config)?;
    check_n(args.n)?;
    let delta = delta_matrix(args.n, &cfg, None).map_err(usage)?;
    let blocks: Vec<Vec<String>> = blocks_of(&delta)
        .iter()
        .map(|b| b.iter().map(|s| s.to_string()).collect())
        .collect();
    match fmt {
        Format::Json => push_json(out, &json!(blocks)),
        Format::Tsv => {
            for b in blocks {
                out.push_str(&b.join("\t"));
                out.push('\n');
            }
        }
    }
    Ok(())
}

fn cmd_ladders(args: &SizeArgs, fmt: Format, out: &mut String) -> CliResult {
    let cfg = valid_config(&args.config)?;
    check_n(args.n)?;
    let groups: Vec<Vec<String>> = ladder_tableaux(args.n, &cfg)
        .iter()
        .map(|g| g.iter().map(|t| t.to_string()).collect())
        .collect();
    match fmt {
        Format::Json => push_json(out, &json!(groups)),
        Format::Tsv => {
            for (i, g) in groups.iter().enumerate() {
                for t in g {
                    out.push_str(&format!("{i}\t{t}\n"));
                }
            }
        }
    }
    Ok(())
}

fn cmd_bounds(args: &SizeArgs, fmt: Format, out: &mut String) -> CliResult {
    let cfg = valid_config(&args.config)?;
    let n = args.n;
    check_n(n)?;
    let bounds = simple_dim_lower_bounds(n, &cfg);
    let delta = delta_matrix(n, &cfg, None).map_err(usage)?;
    let decomp = decomposition_from_delta(&delta).map_err(usage)?;
    let dims = simple_dims_from(n, &cfg, &decomp.n).map_err(usage)?;
    match fmt {
        Format::Json => {
            let lower: serde_json::Map<String, Value> =
                bounds.iter().map(|(s, b)| (s.to_string(), json!(b))).collect();
            let simple: serde_json::Map<String, Value> = dims
                .iter()
                .map(|(s, d)| (s.to_string(), serde_json::to_value(d).expect("poly serializes")))
                .collect();
            push_json(
                out,
                &json!({
                    "lower_bounds": lower,
                    "simple_dims": { "conjectural": true, "dims": simple },
                }),
            );
        }
        Format::Tsv => {
            out.push_str("shape\tstd_count\tlower_bound\tsimple_dim (conjectural)\n");
            for (s, b) in &bounds {
                out.push_str(&format!("{s}\t{}\t{b}\t{}\n", std_count(n, *s), dims[s].to_compact_string()));
            }
        }
    }
    Ok(())
}

fn cmd_calibrated(
    args: &SizeArgs,
    shape: Option<Shape>,
    seed: u64,
    tol: f64,
    blob: bool,
    fmt: Format,
    out: &mut String,
) -> CliResult {
    let cfg = valid_config(&args.config)?;
    let n = args.n;
    check_n(n)?;
    let targets = match shape {
        Some(s) => {
            check_shape_arg(n, s)?;
            vec![s]
        }
        None => shapes(n),
    };
    let numeric = NumericSeed::seeded(&cfg, n, seed).map_err(|e| CliError::Failed(e.to_string()))?;
    let mut all_pass = true;
    let mut items = Vec::new();
    let mut lines = String::from("shape\tdim\tcheck\tmax_residual\tworst\tstatus\n");
    for s in targets {
        let report = check_shape(&cfg, n, s, &numeric, tol).map_err(|e| CliError::Failed(e.to_string()))?;
        let mut parts = vec![("relations", &report.relations)];
        if blob {
            parts.push(("blob", &report.blob));
        }
        let mut item = json!({ "shape": s.to_string(), "dim": report.dim });
        for (label, rep) in parts {
            all_pass &= rep.passed();
            let (worst, max) = rep.worst().map(|(w, v)| (w.to_string(), v)).unwrap_or_default();
            let status = if rep.passed() { "pass" } else { "FAIL" };
            lines.push_str(&format!("{s}\t{}\t{label}\t{max:.3e}\t{worst}\t{status}\n", report.dim));
            item[label] = json!({ "passed": rep.passed(), "max_residual": max, "residuals": rep.residuals });
        }
        items.push(item);
    }
    match fmt {
        Format::Json => push_json(out, &json!({ "seed": seed, "tol": tol, "passed": all_pass, "shapes": items })),
        Format::Tsv => out.push_str(&lines),
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Failed("relation residuals above tolerance".into()))
    }
}

fn cmd_degree(args: &TableauArgs, fmt: Format, out: &mut String) -> CliResult {
    let cfg = valid_config(&args.config)?;
    let t = &args.tableau;
    let base = cfg.special(t.shape().marker);
    let tiles = tiling(t, &cfg);
    let (by_tiles, by_rules) = (degree_tiles(t, &cfg), degree_klr(t, &cfg));
    match fmt {
        Format::Json => {
            let tiles: Vec<Value> = tiles
                .iter()
                .map(|tile| {
                    json!({
                        "top_x": tile.top_x,
                        "top_y": tile.top_y,
                        "side": format!("{:?}", tile.side),
                        "degree": tile_degree(tile, base, &cfg),
                    })
                })
                .collect();
            push_json(
                out,
                &json!({ "tableau": t.to_string(), "degree_tiles": by_tiles, "degree_klr": by_rules, "tiles": tiles }),
            );
        }
        Format::Tsv => {
            out.push_str(&format!("tableau\t{t}\ndegree_tiles\t{by_tiles}\ndegree_klr\t{by_rules}\n"));
            out.push_str("top_x\ttop_y\tside\tdegree\n");
            for tile in &tiles {
                out.push_str(&format!(
                    "{}\t{}\t{:?}\t{}\n",
                    tile.top_x,
                    tile.top_y,
                    tile.side,
                    tile_degree(tile, base, &cfg)
                ));
            }
        }
    }
    if by_tiles == by_rules {
        Ok(())
    } else {
        Err(CliError::Failed(format!("degrees disagree: {by_tiles} by tiles, {by_rules} by generators")))
    }
}

fn cmd_word(args: &TableauArgs, fmt: Format, out: &mut String) -> CliResult {
    let cfg = valid_config(&args.config)?;
    let t = &args.tableau;
    let word = reduced_word(t, &cfg);
    let length = coxeter_length(&signed_permutation(t));
    match fmt {
        Format::Json => push_json(out, &json!({ "tableau": t.to_string(), "word": word, "length": length })),
        Format::Tsv => {
            let letters: Vec<String> = word.iter().map(|g| g.to_string()).collect();
            out.push_str(&format!("tableau\t{t}\nword\t{}\nlength\t{length}\n", letters.join(" ")));
        }
    }
    Ok(())
}
