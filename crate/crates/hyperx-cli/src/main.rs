//! Command-line front end: exact covering numbers, covers, realizations
//! and extensions of hypersimplices, with JSON certificates and a run
//! manifest for reproducibility.
//!
//! Exit codes: 0 = claim verified, 1 = claim refuted, 2 = resource limit
//! reached, 3 = usage or input error.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperx::covering::{
    bound_ledger, greedy_cover, lift_pattern_cover, randomized_cover_gnk, verify_cover,
    CoverCheck, RandomizedCover,
};
use hyperx::hypersimplex::{
    g_pattern_matrix, slack_matrix_standard, standard_polytope, HypersimplexSpec, SlackMatrix,
};
use hyperx::json;
use hyperx::realization::{
    g_matrix_from_realization, is_g_generic, projective_normalize, random_ratio_matrix,
    ratio_matrix_from_g, sample_n2, singular_62_ratio_matrix, special_52_slack_matrix,
};
use hyperx::sat::{
    dimacs, encode_variant, rc_exact, solve_feasibility, CoverVariant, Limits, SearchConfig,
    Status, SymmetryBreaking,
};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "hyperx", version, about = "Exact covering bounds for hypersimplex extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Wall-clock limit per solver call, in seconds.
    #[arg(long, global = true)]
    timeout: Option<u64>,

    /// Write the JSON certificate (and manifest) to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,

    /// Instead of solving, write the CNF in DIMACS format to this file.
    #[arg(long, global = true)]
    external_solver_dimacs: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SpecArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    /// Full 2n x C(n,k) slack matrix of the standard realization.
    Slack,
    /// n x C(n,k) G-pattern matrix.
    Pattern,
    /// Slack matrix of the distinguished generic (5,2) realization.
    Special52,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymArg {
    Off,
    Lex,
    Clique,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and facet description of the standard (n, k)-hypersimplex.
    Hull(SpecArgs),
    /// Print or export a slack or pattern matrix.
    Slack {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Slack)]
        kind: MatrixKind,
    },
    /// Exact rectangle covering number via SAT, with certificates.
    Rc {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Slack)]
        kind: MatrixKind,
        /// Check feasibility at this size only instead of searching.
        #[arg(long)]
        rectangles: Option<usize>,
        #[arg(long)]
        lo: Option<usize>,
        #[arg(long)]
        hi: Option<usize>,
        #[arg(long, value_enum, default_value_t = SymArg::Clique)]
        symmetry: SymArg,
    },
    /// Refined covering feasibility (strict 2x2 cross-product witnesses).
    Rrc {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Slack)]
        kind: MatrixKind,
        #[arg(long)]
        rectangles: usize,
        #[arg(long, value_enum, default_value_t = SymArg::Clique)]
        symmetry: SymArg,
    },
    /// Generically refined covering feasibility.
    Grrc {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Slack)]
        kind: MatrixKind,
        #[arg(long)]
        rectangles: usize,
        #[arg(long, value_enum, default_value_t = SymArg::Clique)]
        symmetry: SymArg,
    },
    /// Build or verify rectangle covers without SAT.
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Sample or analyze (n, 2) realizations from ratio matrices.
    Realize {
        #[arg(long)]
        n: usize,
        /// Ratio matrix JSON file; default is a random sample.
        #[arg(long)]
        ratios: Option<PathBuf>,
        /// Use the non-G-generic (6,2) ratio matrix over Q(sqrt 6).
        #[arg(long)]
        singular62: bool,
    },
    /// Distinguished extensions and their verification.
    Extend {
        #[arg(long, value_enum)]
        target: ExtendTarget,
    },
    /// Known bounds for the nonnegative rank of the (n, k)-hypersimplex.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
        /// Bounds valid for every combinatorial realization.
        #[arg(long)]
        combinatorial: bool,
    },
    /// Re-run a named computational result end to end.
    Reproduce {
        #[arg(long, value_enum)]
        target: ReproduceTarget,
    },
}

#[derive(Subcommand)]
enum CoverAction {
    /// Verify a covering JSON file against a matrix.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Slack)]
        kind: MatrixKind,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Greedy cover by maximal rectangles.
    Greedy {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Slack)]
        kind: MatrixKind,
    },
    /// Randomized cover of the G-pattern matrix.
    Random {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// SAT cover of the G-pattern matrix lifted to the full slack matrix.
    Lift {
        #[command(flatten)]
        spec: SpecArgs,
        /// Size of the pattern cover to search for.
        #[arg(long)]
        rectangles: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtendTarget {
    /// 9-facet extension of the (5,2)-hypersimplex.
    Delta52,
    /// Square/octagon projection example.
    SqOct,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReproduceTarget {
    /// rc and nonnegative rank of the (4,2)-hypersimplex equal 6.
    Thm1142,
    /// rc of the (5,2)-hypersimplex equals 9, with a 9-facet extension.
    Thm1152,
    /// rc of the (6,2)-hypersimplex equals 12.
    Thm1162,
    /// rc of the (6,3)-hypersimplex equals 12.
    Thm1163,
    /// The generic (5,2) realization has no generically refined 9-cover.
    Grrc52,
    /// rc of the (10,2)-hypersimplex is at most 19.
    Rc102Upper,
    /// A non-G-generic (6,2)-hypersimplex exists.
    Singular62,
    /// Square/octagon: nonnegative rank below disjoint-facet max plus two.
    SqOct,
}

#[derive(Serialize)]
struct Manifest {
    command: Vec<String>,
    seed: u64,
    timeout_secs: Option<u64>,
    inputs: Vec<InputHash>,
    outcome: String,
    wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<serde_json::Value>,
}

#[derive(Serialize)]
struct InputHash {
    path: String,
    sha256: String,
}

fn hash_file(path: &PathBuf) -> anyhow::Result<InputHash> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = Sha256::digest(&bytes);
    Ok(InputHash {
        path: path.display().to_string(),
        sha256: format!("{digest:x}"),
    })
}

struct Ctx {
    seed: u64,
    limits: Limits,
    timeout_secs: Option<u64>,
    json_out: Option<PathBuf>,
    dimacs_out: Option<PathBuf>,
    inputs: Vec<InputHash>,
}

impl Ctx {
    fn config(&self, variant: CoverVariant, symmetry: SymArg) -> SearchConfig {
        SearchConfig {
            symmetry: match symmetry {
                SymArg::Off => SymmetryBreaking::Off,
                SymArg::Lex => SymmetryBreaking::Lex,
                SymArg::Clique => SymmetryBreaking::Clique,
            },
            limits: self.limits,
            variant,
        }
    }

    fn finish(
        &self,
        outcome: &str,
        certificate: Option<serde_json::Value>,
        started: Instant,
        code: i32,
    ) -> anyhow::Result<i32> {
        let manifest = Manifest {
            command: std::env::args().collect(),
            seed: self.seed,
            timeout_secs: self.timeout_secs,
            inputs: self.inputs.iter().map(|i| InputHash {
                path: i.path.clone(),
                sha256: i.sha256.clone(),
            }).collect(),
            outcome: outcome.to_string(),
            wall_ms: started.elapsed().as_millis(),
            certificate,
        };
        let text = serde_json::to_string_pretty(&manifest)?;
        match &self.json_out {
            Some(path) => std::fs::write(path, text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => println!("{text}"),
        }
        Ok(code)
    }
}

fn matrix_of(kind: MatrixKind, n: usize, k: usize) -> anyhow::Result<SlackMatrix> {
    match kind {
        MatrixKind::Slack => Ok(slack_matrix_standard(HypersimplexSpec::new(n, k)?)),
        MatrixKind::Pattern => {
            HypersimplexSpec::new(n, k)?;
            Ok(g_pattern_matrix(n, k))
        }
        MatrixKind::Special52 => {
            if (n, k) != (5, 2) {
                return Err(anyhow!("the special realization exists only for n = 5, k = 2"));
            }
            Ok(special_52_slack_matrix()?)
        }
    }
}

fn feasibility_outcome(
    ctx: &Ctx,
    s: &SlackMatrix,
    r: usize,
    variant: CoverVariant,
    symmetry: SymArg,
    started: Instant,
) -> anyhow::Result<i32> {
    if let Some(path) = &ctx.dimacs_out {
        let mut f = encode_variant(s, r, variant);
        hyperx::sat::break_symmetry(&mut f, s, match symmetry {
            SymArg::Off => SymmetryBreaking::Off,
            SymArg::Lex => SymmetryBreaking::Lex,
            SymArg::Clique => SymmetryBreaking::Clique,
        });
        std::fs::write(path, dimacs::write_dimacs(&f))?;
        println!(
            "wrote {} ({} variables, {} clauses)",
            path.display(),
            f.var_count,
            f.clauses.len()
        );
        return ctx.finish("dimacs-exported", None, started, 0);
    }
    let out = solve_feasibility(s, r, &ctx.config(variant, symmetry))?;
    match out.status {
        Status::Sat => {
            let cover = out.cover.expect("SAT result carries a cover");
            println!(
                "{}: cover with {} rectangles exists ({} conflicts)",
                s.id,
                cover.size(),
                out.stats.conflicts
            );
            ctx.finish("sat", Some(json::covering_to_json(&cover)), started, 0)
        }
        Status::Unsat => {
            println!(
                "{}: no cover with {} rectangles ({} conflicts)",
                s.id, r, out.stats.conflicts
            );
            ctx.finish("unsat", None, started, 1)
        }
        Status::Timeout => {
            println!("{}: resource limit reached at {} rectangles", s.id, r);
            ctx.finish("timeout", None, started, 2)
        }
    }
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    let started = Instant::now();
    let limits = Limits {
        max_conflicts: None,
        max_time: cli.timeout.map(Duration::from_secs),
    };
    let mut ctx = Ctx {
        seed: cli.seed,
        limits,
        timeout_secs: cli.timeout,
        json_out: cli.json_out.clone(),
        dimacs_out: cli.external_solver_dimacs.clone(),
        inputs: Vec::new(),
    };

    match cli.command {
        Command::Hull(spec) => {
            let (p, labeling) = standard_polytope(HypersimplexSpec::new(spec.n, spec.k)?)?;
            println!(
                "delta({}, {}): dim {}, {} vertices, {} facets",
                spec.n,
                spec.k,
                p.dim(),
                p.vertex_count(),
                p.facet_count()
            );
            for (fi, label) in labeling.facet_labels.iter().enumerate() {
                let tight = p.vertex_facet_incidence()[fi]
                    .iter()
                    .filter(|&&b| b)
                    .count();
                println!("  facet {label}: {tight} vertices");
            }
            ctx.finish("verified", Some(json::polytope_to_json(&p)), started, 0)
        }
        Command::Slack { spec, kind } => {
            let s = matrix_of(kind, spec.n, spec.k)?;
            println!(
                "{}: {} x {}, support {}",
                s.id,
                s.rows(),
                s.cols(),
                s.support_size()
            );
            ctx.finish("verified", Some(json::slack_to_json(&s)), started, 0)
        }
        Command::Rc {
            spec,
            kind,
            rectangles,
            lo,
            hi,
            symmetry,
        } => {
            let s = matrix_of(kind, spec.n, spec.k)?;
            if let Some(r) = rectangles {
                return feasibility_outcome(&ctx, &s, r, CoverVariant::Plain, symmetry, started);
            }
            let dim_lb = match kind {
                MatrixKind::Slack | MatrixKind::Special52 => spec.n,
                MatrixKind::Pattern => 1,
            };
            let lo = lo.unwrap_or(dim_lb);
            let hi = hi.unwrap_or_else(|| s.rows().min(s.cols()));
            let result = rc_exact(&s, lo, hi, &ctx.config(CoverVariant::Plain, symmetry))?;
            println!(
                "rc({}) = {} (lower side {}certified by solver)",
                s.id,
                result.value,
                if result.unsat_certified { "" } else { "not " }
            );
            ctx.finish(
                &format!("rc={}", result.value),
                Some(json::covering_to_json(&result.cover)),
                started,
                0,
            )
        }
        Command::Rrc {
            spec,
            kind,
            rectangles,
            symmetry,
        } => {
            let s = matrix_of(kind, spec.n, spec.k)?;
            feasibility_outcome(&ctx, &s, rectangles, CoverVariant::Refined, symmetry, started)
        }
        Command::Grrc {
            spec,
            kind,
            rectangles,
            symmetry,
        } => {
            let s = matrix_of(kind, spec.n, spec.k)?;
            feasibility_outcome(
                &ctx,
                &s,
                rectangles,
                CoverVariant::GenericRefined,
                symmetry,
                started,
            )
        }
        Command::Cover { action } => match action {
            CoverAction::Verify { spec, kind, cover } => {
                ctx.inputs.push(hash_file(&cover)?);
                let s = matrix_of(kind, spec.n, spec.k)?;
                let text = std::fs::read_to_string(&cover)?;
                let c = json::covering_from_json(&serde_json::from_str(&text)?)?;
                match verify_cover(&s, &c)? {
                    CoverCheck::Valid => {
                        println!("valid cover of {} with {} rectangles", s.id, c.size());
                        ctx.finish("verified", None, started, 0)
                    }
                    bad => {
                        println!("invalid cover: {bad:?}");
                        ctx.finish("refuted", None, started, 1)
                    }
                }
            }
            CoverAction::Greedy { spec, kind } => {
                let s = matrix_of(kind, spec.n, spec.k)?;
                let c = greedy_cover(&s);
                println!("greedy cover of {} with {} rectangles", s.id, c.size());
                ctx.finish(
                    &format!("cover-size={}", c.size()),
                    Some(json::covering_to_json(&c)),
                    started,
                    0,
                )
            }
            CoverAction::Random { spec, trials } => {
                match randomized_cover_gnk(spec.n, spec.k, trials, ctx.seed)? {
                    RandomizedCover::Found {
                        covering,
                        batches_used,
                    } => {
                        println!(
                            "randomized cover of g_pattern_{}_{} with {} rectangles after {} batches",
                            spec.n,
                            spec.k,
                            covering.size(),
                            batches_used
                        );
                        ctx.finish(
                            &format!("cover-size={}", covering.size()),
                            Some(json::covering_to_json(&covering)),
                            started,
                            0,
                        )
                    }
                    RandomizedCover::Failed { trials } => {
                        println!("no covering batch found in {trials} trials");
                        ctx.finish("failed", None, started, 2)
                    }
                }
            }
            CoverAction::Lift { spec, rectangles } => {
                let pattern = g_pattern_matrix(spec.n, spec.k);
                let out = solve_feasibility(
                    &pattern,
                    rectangles,
                    &ctx.config(CoverVariant::Plain, SymArg::Clique),
                )?;
                match out.status {
                    Status::Sat => {
                        let cover = out.cover.expect("SAT carries a cover");
                        let lifted = lift_pattern_cover(spec.n, spec.k, &cover)?;
                        println!(
                            "rc(delta({}, {})) <= {} via lifted pattern cover",
                            spec.n,
                            spec.k,
                            lifted.size()
                        );
                        ctx.finish(
                            &format!("upper-bound={}", lifted.size()),
                            Some(json::covering_to_json(&lifted)),
                            started,
                            0,
                        )
                    }
                    Status::Unsat => {
                        println!("no pattern cover with {rectangles} rectangles");
                        ctx.finish("unsat", None, started, 1)
                    }
                    Status::Timeout => ctx.finish("timeout", None, started, 2),
                }
            }
        },
        Command::Realize {
            n,
            ratios,
            singular62,
        } => {
            let r = if singular62 {
                if n != 6 {
                    return Err(anyhow!("the singular example has n = 6"));
                }
                singular_62_ratio_matrix()
            } else if let Some(path) = ratios {
                ctx.inputs.push(hash_file(&path)?);
                let text = std::fs::read_to_string(&path)?;
                json::ratio_matrix_from_json(&serde_json::from_str(&text)?)?
            } else {
                use rand_chacha::rand_core::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ctx.seed);
                random_ratio_matrix(n, 10, &mut rng)
            };
            let (p, labeling) = sample_n2(&r)?;
            let g = g_matrix_from_realization(&p, &labeling, n)?;
            let generic = is_g_generic(&g)?;
            let recovered = projective_normalize(&ratio_matrix_from_g(&g)?);
            println!(
                "(n, 2) realization with n = {n}: {} vertices, {} facets, G-generic: {generic}",
                p.vertex_count(),
                p.facet_count()
            );
            let cert = serde_json::json!({
                "polytope": json::polytope_to_json(&p),
                "normalized_ratios": json::ratio_matrix_to_json(&recovered),
                "g_generic": generic,
            });
            ctx.finish("verified", Some(cert), started, 0)
        }
        Command::Extend { target } => {
            let e = match target {
                ExtendTarget::Delta52 => hyperx::extensions::delta52_extension()?,
                ExtendTarget::SqOct => hyperx::extensions::counterexample_sq_oct()?,
            };
            println!(
                "extension with {} facets over a target with {} facets",
                e.facet_count(),
                e.target.facet_count()
            );
            let cert = serde_json::json!({
                "extension": json::polytope_to_json(&e.ext),
                "target": json::polytope_to_json(&e.target),
            });
            ctx.finish("verified", Some(cert), started, 0)
        }
        Command::Bounds {
            spec,
            combinatorial,
        } => {
            let ledger = bound_ledger(spec.n, spec.k, combinatorial)?;
            println!(
                "delta({}, {}): lower {}, upper {}{}",
                ledger.n,
                ledger.k,
                ledger.lower,
                ledger.upper,
                match ledger.exact {
                    Some(e) => format!(", exact {e}"),
                    None => String::new(),
                }
            );
            for line in &ledger.trace {
                println!("  {line}");
            }
            ctx.finish("verified", None, started, 0)
        }
        Command::Reproduce { target } => reproduce(&ctx, target, started),
    }
}

fn reproduce(ctx: &Ctx, target: ReproduceTarget, started: Instant) -> anyhow::Result<i32> {
    let rc_equals = |n: usize, k: usize, expected: usize| -> anyhow::Result<bool> {
        let s = slack_matrix_standard(HypersimplexSpec::new(n, k)?);
        let config = SearchConfig {
            limits: ctx.limits,
            ..SearchConfig::default()
        };
        let result = rc_exact(&s, n, s.rows().min(s.cols()), &config)?;
        println!(
            "rc(delta({n}, {k})) = {} ({} solver rounds)",
            result.value,
            result.rounds.len()
        );
        Ok(result.value == expected && result.unsat_certified)
    };
    let ok = match target {
        ReproduceTarget::Thm1142 => rc_equals(4, 2, 6)?,
        ReproduceTarget::Thm1152 => {
            let rc_ok = rc_equals(5, 2, 9)?;
            let e = hyperx::extensions::delta52_extension()?;
            println!("matching extension with {} facets", e.facet_count());
            rc_ok && e.facet_count() == 9
        }
        ReproduceTarget::Thm1162 => rc_equals(6, 2, 12)?,
        ReproduceTarget::Thm1163 => rc_equals(6, 3, 12)?,
        ReproduceTarget::Grrc52 => {
            let s = special_52_slack_matrix()?;
            let config = SearchConfig {
                variant: CoverVariant::GenericRefined,
                limits: ctx.limits,
                ..SearchConfig::default()
            };
            let at9 = solve_feasibility(&s, 9, &config)?;
            let at10 = solve_feasibility(&s, 10, &config)?;
            println!(
                "generic (5,2) realization: 9 rectangles {:?}, 10 rectangles {:?}",
                at9.status, at10.status
            );
            at9.status == Status::Unsat && at10.status == Status::Sat
        }
        ReproduceTarget::Rc102Upper => {
            let pattern = g_pattern_matrix(10, 2);
            let config = SearchConfig {
                limits: ctx.limits,
                ..SearchConfig::default()
            };
            let out = solve_feasibility(&pattern, 9, &config)?;
            match out.cover {
                Some(cover) => {
                    let lifted = lift_pattern_cover(10, 2, &cover)?;
                    println!("rc(delta(10, 2)) <= {}", lifted.size());
                    lifted.size() <= 19
                }
                None => false,
            }
        }
        ReproduceTarget::Singular62 => {
            let r = singular_62_ratio_matrix();
            let (p, labeling) = sample_n2(&r)?;
            let combinatorial =
                hyperx::hypersimplex::is_combinatorial_hypersimplex(&p, 6, 2, &labeling)?;
            let singular = r.matrix.determinant()?.is_zero();
            println!(
                "(6,2) realization over Q(sqrt 6): combinatorial hypersimplex {combinatorial}, G-matrix singular {singular}"
            );
            combinatorial && singular
        }
        ReproduceTarget::SqOct => {
            let e = hyperx::extensions::counterexample_sq_oct()?;
            let oct = hyperx::extensions::sq_oct_octagon()?;
            let s = hyperx::extensions::slack_matrix_of_polytope(&oct, "octagon")?;
            let config = SearchConfig {
                limits: ctx.limits,
                ..SearchConfig::default()
            };
            let oct_rc = rc_exact(&s, 3, 8, &config)?;
            println!(
                "extension facets {}, octagon rc {}",
                e.facet_count(),
                oct_rc.value
            );
            e.facet_count() == 7 && oct_rc.value == 6
        }
    };
    if ok {
        println!("reproduced");
        ctx.finish("verified", None, started, 0)
    } else {
        println!("reproduction FAILED");
        ctx.finish("refuted", None, started, 1)
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(3);
        }
    }
}
