use std::process::ExitCode;

use clap::{Parser, Subcommand};
use misere::harness::{parse_overrides, run_all, CheckStatus, RunConfig};
use misere::{Convention, Filter, GameId, Games, Status, Style, UniverseSpec};
use serde_json::json;

#[derive(Parser)]
#[command(name = "misere", version, about = "Exact misère game engine")]
struct Cli {
    /// Print games with known names substituted.
    #[arg(long, global = true)]
    named: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Outcome class (L, N, P or R) of a game.
    Outcome {
        expr: String,
        /// Normal play instead of misère.
        #[arg(long)]
        normal: bool,
    },
    /// Decide or search for G ≥ H modulo a universe.
    Compare {
        g: String,
        h: String,
        #[arg(long, default_value = "dicot")]
        universe: Filter,
        /// Birthday bound for distinguisher search.
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long)]
        json: bool,
    },
    /// Canonical form of an impartial game.
    Canonical {
        expr: String,
        #[arg(long, required = true)]
        impartial: bool,
    },
    Adjoint {
        expr: String,
    },
    Tilde {
        expr: String,
        /// Index of the B game used at ends; defaults to the birthday.
        #[arg(long = "i")]
        i: Option<u32>,
    },
    /// Birthday, outcomes and structural predicates of a game.
    Show {
        expr: String,
    },
    /// List or count the trees admitted by a filter.
    Enumerate {
        #[arg(long)]
        filter: Filter,
        #[arg(long)]
        birthday: u32,
        #[arg(long)]
        count: bool,
    },
    /// Equivalence-class counts.
    Census {
        #[command(subcommand)]
        which: CensusCommand,
    },
    /// Run theorem checks: `all` or a comma-separated list of ids.
    Verify {
        ids: String,
        #[arg(long)]
        json: bool,
        /// Parameter overrides, `k=v,k=v`.
        #[arg(long)]
        bound_overrides: Option<String>,
        #[arg(long)]
        pairs_bound: Option<u64>,
        #[arg(long)]
        dist_bound: Option<u64>,
    },
    /// List the registered checks.
    Checks,
}

#[derive(Subcommand)]
enum CensusCommand {
    /// Binary dicot trees born by day 3 under mutual comparison.
    #[command(name = "binary-dicot-3")]
    BinaryDicot3 {
        #[arg(long)]
        json: bool,
    },
    /// Lower approximation of the dicot classes born by day 3.
    Dicot3 {
        #[arg(long, required = true)]
        approx: bool,
        #[arg(long, default_value_t = 2)]
        dist_bound: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> misere::Result<ExitCode> {
    let games = Games::new();
    let style = if cli.named { Style::Named } else { Style::Braces };
    let show = |g: GameId| games.print(g, style);
    match cli.command {
        Command::Outcome { expr, normal } => {
            let g = games.parse_game(&expr)?;
            let conv = if normal { Convention::Normal } else { Convention::Misere };
            println!("{}", games.outcome(g, conv));
        }
        Command::Compare { g, h, universe, bound, json } => {
            let (g, h) = (games.parse_game(&g)?, games.parse_game(&h)?);
            let v = games.compare(g, h, UniverseSpec::new(universe, bound))?;
            if json {
                println!("{}", v.to_json(&games));
            } else {
                let status = match v.status {
                    Status::Proved => "proved",
                    Status::Refuted => "refuted",
                    Status::Unknown => "unknown",
                };
                print!("{status} ({})", v.method);
                if let Some(w) = v.witness {
                    print!(" witness {}", show(w));
                }
                if let Some(b) = v.bound_used {
                    print!(" bound {b}");
                }
                println!();
            }
        }
        Command::Canonical { expr, .. } => {
            let g = games.parse_game(&expr)?;
            println!("{}", show(games.canonical_impartial(g)?));
        }
        Command::Adjoint { expr } => {
            let g = games.parse_game(&expr)?;
            println!("{}", show(games.adjoint(g)));
        }
        Command::Tilde { expr, i } => {
            let g = games.parse_game(&expr)?;
            let i = i.unwrap_or_else(|| games.birthday(g));
            println!("{}", show(games.tilde(g, i)?));
        }
        Command::Show { expr } => {
            let g = games.parse_game(&expr)?;
            let v = json!({
                "braces": games.braces(g),
                "named": games.print(g, Style::Named),
                "birthday": games.birthday(g),
                "misere": games.outcome(g, Convention::Misere).to_string(),
                "normal": games.outcome(g, Convention::Normal).to_string(),
                "dicot": games.is_dicot(g),
                "binary": games.is_binary(g),
                "impartial": games.is_impartial(g),
                "followers": games.followers(g).len(),
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Command::Enumerate { filter, birthday, count } => {
            if count {
                println!("{}", misere::count(filter, birthday)?);
            } else {
                for &g in games.enumerate(filter, birthday)?.members() {
                    println!("{}", show(g));
                }
            }
        }
        Command::Census { which: CensusCommand::BinaryDicot3 { json } } => {
            let c = games.census_binary_dicot(3)?;
            if json {
                println!("{}", serde_json::to_string(&c).expect("json"));
            } else {
                println!("trees {}\nclasses {}\ncanonical {}", c.trees, c.classes, c.canonical);
                for f in &c.forms {
                    println!("  {f}");
                }
            }
        }
        Command::Census { which: CensusCommand::Dicot3 { dist_bound, .. } } => {
            for d in 0..=dist_bound {
                println!("dist-bound {d}: {} classes", games.census_dicot_approx(3, d)?);
            }
        }
        Command::Verify { ids, json, bound_overrides, pairs_bound, dist_bound } => {
            let mut overrides = parse_overrides(bound_overrides.as_deref().unwrap_or(""))?;
            if let Some(p) = pairs_bound {
                overrides.insert("pairs_bound".into(), p);
            }
            if let Some(d) = dist_bound {
                overrides.insert("dist_bound".into(), d);
            }
            let only = (ids != "all").then(|| ids.split(',').map(|s| s.trim().to_owned()).collect());
            let reports = run_all(&games, &RunConfig { only, overrides })?;
            for r in &reports {
                if json {
                    println!("{}", r.to_json());
                } else {
                    let status = match r.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::Unknown => "unknown",
                    };
                    println!(
                        "{:<22} {:<7} checked {:>8} filtered {:>6} {:>6} ms",
                        r.theorem, status, r.instances_checked, r.instances_filtered, r.elapsed_ms
                    );
                    for c in &r.counterexamples {
                        println!("    g={} h={:?} x={:?} expected {} got {}", c.g, c.h, c.x, c.expected, c.got);
                    }
                    for n in &r.notes {
                        println!("    {n}");
                    }
                }
            }
            if reports.iter().any(|r| r.status == CheckStatus::Fail) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Checks => {
            for c in misere::registry() {
                let params: Vec<String> = c.defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{:<22} {}  [{}]", c.id, c.anchor, params.join(","));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
