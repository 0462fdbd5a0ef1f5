mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use jenga_core::deform::{deformation_pipeline, Branch};
use jenga_core::export::{render_ascii, to_obj, to_off};
use jenga_core::game::{max_genus_search, Rules, SearchOptions};
use jenga_core::geometry::{connected_components, Violation};
use jenga_core::topology::{
    closed_form_counts, defect_sum, lemma_genus_from_census, vertex_census, Counts, VertexTag,
};
use jenga_core::{
    closed_form_genus, extract_boundary, genus_descartes, genus_euler, make_initial,
    make_nk_configuration, parse_box_description, serialize_box_description,
    validate_closed_surface, voxelize, Configuration, GameParams,
};
use serde_json::{json, Value};

use report::Report;

#[derive(Parser)]
#[command(name = "jenga", version, about = "Genus of generalized Jenga towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the box description of the maximal (or initial) tower
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// The full starting tower instead of the maximal one
        #[arg(long)]
        initial: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Genus by the Euler characteristic and by angular defects
    Genus {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        expect_genus: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Vertex counts by class, per floor, against the closed forms
    Census {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        exclude_topmost: bool,
        #[arg(long)]
        json: bool,
    },
    /// Validate that the boundary is a closed surface
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        expect_genus: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Breadth-first search for the largest reachable genus
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2_000_000)]
        max_states: usize,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        allow_top_removal: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Deform the maximal tower into the given one, tracking the genus
    Deform {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Write the boundary surface as a mesh
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Obj)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the tower, top level first
    Render {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Off,
}

/// A tower read from `--in` (`-` for stdin), or generated from `--n`/`--k`.
#[derive(Args)]
struct Source {
    #[arg(long = "in", value_name = "PATH", conflicts_with_all = ["n", "k", "initial"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "k")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    k: Option<usize>,
    #[arg(long, requires = "n")]
    initial: bool,
}

/// Bad invocation detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

impl Source {
    fn load(&self) -> Result<Configuration> {
        match (&self.input, self.n, self.k) {
            (Some(path), _, _) => {
                let text = if path.as_os_str() == "-" {
                    let mut buf = String::new();
                    io::stdin().read_to_string(&mut buf)?;
                    buf
                } else {
                    fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?
                };
                Ok(parse_box_description(&text)?)
            }
            (None, Some(n), Some(k)) => {
                let p = GameParams::new(n, k)?;
                Ok(if self.initial {
                    make_initial(p)?
                } else {
                    make_nk_configuration(p)?
                })
            }
            _ => Err(Usage("give --in <path>, or --n and --k".into()).into()),
        }
    }
}

/// `(n, k)` when the tower is the maximal tower for its block count.
fn as_maximal(c: &Configuration) -> Option<GameParams> {
    let n = c.n();
    if !c.block_count().is_multiple_of(n) {
        return None;
    }
    let p = GameParams::new(n, c.block_count() / n).ok()?;
    (p.k >= 3 && make_nk_configuration(p).ok()? == *c).then_some(p)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn rows(c: &Configuration) -> Value {
    serialize_box_description(c).lines().collect::<Vec<_>>().into()
}

fn counts_value(c: Counts, geometric: (usize, usize, usize)) -> Value {
    json!({
        "type_i": c.type_i,
        "type_ii": c.type_ii,
        "type_iii": c.type_iii,
        "matches": (c.type_i, c.type_ii, c.type_iii) == geometric,
    })
}

/// Outcome of a subcommand: text already printed, plus whether it passed.
type Outcome = Result<bool>;

fn gen(n: usize, k: usize, initial: bool, out: &Option<PathBuf>, json: bool) -> Outcome {
    let p = GameParams::new(n, k)?;
    let c = if initial {
        make_initial(p)?
    } else {
        make_nk_configuration(p)?
    };
    let text = serialize_box_description(&c);
    if json {
        let mut r = Report::new();
        r.put("n", n).put("k", k).put("initial", initial).put("box", text);
        emit(out, &r.render(true))?;
    } else {
        emit(out, &text)?;
    }
    Ok(true)
}

fn genus(source: &Source, expect: Option<i64>, json: bool) -> Outcome {
    let c = source.load()?;
    let s = extract_boundary(&voxelize(&c));
    let ge = genus_euler(&s)?;
    let gd = genus_descartes(&s)?;
    let mut r = Report::new();
    r.put("n", c.n())
        .put("levels", c.levels_count())
        .put("blocks", c.block_count())
        .put("vertices", s.vertex_count())
        .put("edges", s.edge_count())
        .put("faces", s.face_count())
        .put("euler_characteristic", s.euler_characteristic())
        .put("defect_quarter_turns", defect_sum(&s))
        .put("genus_euler", ge)
        .put("genus_descartes", gd);
    if let Some(p) = as_maximal(&c) {
        r.put("closed_form", closed_form_genus(p)?);
    }
    let ok = ge == gd && expect.is_none_or(|g| g == ge);
    if let Some(g) = expect {
        r.put("expected_genus", g).put("matches_expected", g == ge);
    }
    print!("{}", r.render(json));
    Ok(ok)
}

fn census(source: &Source, exclude_topmost: bool, json: bool) -> Outcome {
    let c = source.load()?;
    let s = extract_boundary(&voxelize(&c));
    let census = vertex_census(&s, &c, exclude_topmost)?;
    let mut r = Report::new();
    r.put("n", c.n())
        .put("levels", c.levels_count())
        .put("exclude_topmost", exclude_topmost)
        .put("type_i", census.type_i)
        .put("type_ii", census.type_ii)
        .put("type_iii", census.type_iii);
    for tag in &VertexTag::ALL[3..] {
        r.put(tag.name(), census.count(*tag));
    }
    r.put("other_defect_vertices", census.other_defect_vertices)
        .put("total_defect", census.total_defect)
        .put("genus_euler", genus_euler(&s)?);
    match lemma_genus_from_census(&census) {
        Ok(g) => r.put("census_genus", g),
        Err(e) => r.put("census_genus", e.to_string()),
    };
    let floors: Vec<Value> = census
        .per_floor
        .iter()
        .map(|f| json!({"floor": f.floor, "type_ii": f.type_ii, "type_iii": f.type_iii}))
        .collect();
    r.put("per_floor", floors);

    if let Some(p) = as_maximal(&c) {
        // closed forms count the tower without its top level
        let lifted = vertex_census(&s, &c, true)?;
        let geometric = (lifted.type_i, lifted.type_ii, lifted.type_iii);
        match closed_form_counts(p) {
            Ok(cf) => {
                r.put(
                    "geometric",
                    json!({"type_i": geometric.0, "type_ii": geometric.1, "type_iii": geometric.2}),
                );
                r.put("printed", counts_value(cf.printed, geometric));
                if let Some(cand) = cf.candidate {
                    r.put("candidate", counts_value(cand, geometric));
                }
                if let Some(rows) = cf.per_floor {
                    let table: Vec<Value> = rows
                        .iter()
                        .zip(&lifted.per_floor)
                        .map(|(p, g)| {
                            json!({
                                "floor": p.floor,
                                "printed_type_ii": p.type_ii,
                                "geometric_type_ii": g.type_ii,
                                "printed_type_iii": p.type_iii,
                                "geometric_type_iii": g.type_iii,
                            })
                        })
                        .collect();
                    r.put("per_floor_compare", table);
                }
            }
            Err(e) => {
                r.put("closed_form_counts", e.to_string());
            }
        }
    }
    print!("{}", r.render(json));
    Ok(true)
}

fn violation_text(v: &Violation) -> String {
    match v {
        Violation::NonManifoldEdge { from, to, faces } => {
            format!("non_manifold_edge {from:?}-{to:?} faces={faces}")
        }
        Violation::NonManifoldVertex {
            at,
            link_components,
        } => format!("non_manifold_vertex {at:?} link_components={link_components}"),
    }
}

fn check(source: &Source, expect: Option<i64>, json: bool) -> Outcome {
    let c = source.load()?;
    let s = extract_boundary(&voxelize(&c));
    let v = validate_closed_surface(&s);
    let components = connected_components(&s).len();
    let mut r = Report::new();
    r.put("closed_surface", v.is_closed_surface)
        .put("violations", v.violations.iter().map(violation_text).collect::<Vec<_>>())
        .put("violation_count", v.violations.len())
        .put("components", components);
    let mut ok = v.is_closed_surface;
    if ok && components == 1 {
        let ge = genus_euler(&s)?;
        let gd = genus_descartes(&s)?;
        r.put("genus_euler", ge).put("genus_descartes", gd);
        if let Some(g) = expect {
            ok &= ge == g && gd == g;
            r.put("expected_genus", g);
        }
    } else if expect.is_some() {
        ok = false;
    }
    r.put("ok", ok);
    print!("{}", r.render(json));
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    k: usize,
    max_states: usize,
    no_symmetry: bool,
    allow_top_removal: bool,
    threads: Option<usize>,
    json: bool,
) -> Outcome {
    let p = GameParams::new(n, k)?;
    let o = SearchOptions {
        max_states,
        use_symmetry: !no_symmetry,
        track_witness: true,
        rules: Rules { allow_top_removal },
    };
    let run = || max_genus_search(p, o);
    let report = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| anyhow!(e))?
            .install(run)?,
        None => run()?,
    };
    let bound = closed_form_genus(p)?;
    let matches = report.max_genus == bound;
    let note = match (report.hit_budget, matches) {
        (true, _) => format!("lower bound, state budget reached; closed form {bound}"),
        (false, true) => "matches closed form".to_string(),
        (false, false) => format!("closed form is {bound}"),
    };
    let mut r = Report::new();
    r.put("n", n)
        .put("k", k)
        .put("symmetry", !no_symmetry)
        .put("allow_top_removal", allow_top_removal)
        .put("states_visited", report.states_visited)
        .put("complete", !report.hit_budget)
        .put_noted("max_genus", report.max_genus, note)
        .put("closed_form", bound)
        .put("matches_closed_form", matches)
        .put("dead_ends", report.dead_ends)
        .put("nk_configuration_visited", report.nk_configuration_visited)
        .put("genus_mismatches", report.genus_mismatches);
    if let Some(moves) = &report.witness {
        r.put("witness_move_count", moves.len());
        r.put(
            "witness_move",
            moves.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        );
    }
    if let Some(w) = &report.witness_config {
        r.put("witness", rows(w));
    }
    print!("{}", r.render(json));
    Ok(report.genus_mismatches == 0)
}

fn deform(source: &Source, json: bool) -> Outcome {
    let q = source.load()?;
    let rep = deformation_pipeline(&q)?;
    let mut r = Report::new();
    r.put("n", rep.params.n)
        .put("k", rep.params.k)
        .put("bound", rep.bound)
        .put("target_genus", rep.target_genus)
        .put(
            "branch",
            match rep.branch {
                Branch::Trivial => "trivial",
                Branch::Direct => "direct",
                Branch::Preprocessed => "preprocessed",
            },
        );
    if let Some(pre) = &rep.preprocess {
        r.put("q2_genus", pre.genus_q2)
            .put("q3_genus", pre.genus_q3)
            .put("preprocess_step", pre.trace.lines());
    }
    if let Some(t) = &rep.trace {
        r.put("pool_start", t.start.pool)
            .put("pool_end", t.end.pool)
            .put("step_count", t.steps.len())
            .put("trace_max_genus", t.max_genus())
            .put("step", t.lines());
    }
    if let (Some(hat), Some(g)) = (&rep.hat, rep.hat_genus) {
        r.put("hat", rows(hat)).put("hat_genus", g);
    }
    let holds = rep.holds();
    r.put("within_bound", holds);
    print!("{}", r.render(json));
    Ok(holds)
}

fn export(source: &Source, format: Format, out: &Option<PathBuf>) -> Outcome {
    let c = source.load()?;
    let s = extract_boundary(&voxelize(&c));
    let text = match format {
        Format::Obj => to_obj(&s)?,
        Format::Off => to_off(&s)?,
    };
    emit(out, &text)?;
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Gen {
            n,
            k,
            initial,
            out,
            json,
        } => gen(*n, *k, *initial, out, *json),
        Command::Genus {
            source,
            expect_genus,
            json,
        } => genus(source, *expect_genus, *json),
        Command::Census {
            source,
            exclude_topmost,
            json,
        } => census(source, *exclude_topmost, *json),
        Command::Check {
            source,
            expect_genus,
            json,
        } => check(source, *expect_genus, *json),
        Command::Search {
            n,
            k,
            max_states,
            no_symmetry,
            allow_top_removal,
            threads,
            json,
        } => {
            if *max_states == 0 {
                bail!(Usage("--max-states must be at least 1".into()));
            }
            search(*n, *k, *max_states, *no_symmetry, *allow_top_removal, *threads, *json)
        }
        Command::Deform { source, json } => deform(source, *json),
        Command::Export {
            source,
            format,
            out,
        } => export(source, *format, out),
        Command::Render { source } => {
            print!("{}", render_ascii(&source.load()?));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
