mod input;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use omegaq::bar::{one_sided_bar, Bar, BarWindow, CobarModule, PRINTED_EPSILON_OFFSET};
use omegaq::coalgebra::{chain_complex, normalized_chains};
use omegaq::cobar::{cobar, h0_relations, pi1_presentation};
use omegaq::corpus;
use omegaq::detect::{whitehead_verdict, DetectConfig, Outcome, Pi1Data, Witness};
use omegaq::groups::{format_word, regular_module};
use omegaq::linalg::{homology_with, Coefficients};
use omegaq::simplicial::SimplicialSetJson;
use omegaq::twisted::twisted_tensor;
use omegaq::{FGAbelianGroup, PiModule, ReducedSimplicialSet};
use serde_json::{json, Value};

use input::{load_map, load_module, load_space, require_table, CliResult};

#[derive(Parser)]
#[command(name = "omegaq", version, about = "Chain-level invariants of finite reduced simplicial sets")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Top degree (homology, local homology, detect) or cobar degree bound.
    #[arg(long, global = true)]
    up_to: Option<usize>,
    /// Cobar word length bound.
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Coset limit for Todd–Coxeter.
    #[arg(long, global = true, default_value_t = 10_000)]
    tc_budget: usize,
    /// z, q or zmod:<m>.
    #[arg(long, global = true, default_value = "z")]
    coeffs: String,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Builtin corpus.
    Space {
        #[command(subcommand)]
        action: SpaceCommand,
    },
    /// Integral homology (or with --coeffs).
    Homology {
        #[arg(long)]
        space: String,
    },
    /// Fundamental group from the degree-zero cobar ring.
    Pi1 {
        #[arg(long)]
        space: String,
    },
    /// Dump of the truncated cobar construction.
    Cobar {
        #[arg(long)]
        space: String,
    },
    /// Homology with local coefficients.
    LocalHomology {
        #[arg(long)]
        space: String,
        /// `regular`, `trivial` or a module JSON file.
        #[arg(long, default_value = "regular")]
        module: String,
    },
    /// Truncated one-sided bar construction over the cobar algebra.
    Bar {
        #[arg(long)]
        space: String,
        /// `trivial`, `regular` or a module JSON file.
        #[arg(long, default_value = "trivial")]
        module: String,
        /// Maximal number of bar letters.
        #[arg(long, default_value_t = 3)]
        words: usize,
    },
    /// Try to certify that a map is not a weak equivalence.
    Detect {
        /// `collapse:NAME`, `identity:NAME` or a map JSON file.
        #[arg(long)]
        map: String,
        /// Extra module JSON files over the target's π₁.
        #[arg(long)]
        module: Vec<String>,
    },
}

#[derive(Subcommand)]
enum SpaceCommand {
    List,
    Show {
        #[arg(long)]
        space: String,
    },
    /// Simplicial-set JSON on standard output.
    Export {
        #[arg(long)]
        space: String,
    },
}

/// JSON value plus its human rendering.
struct Report {
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.opts.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("json"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            println!("{}", serde_json::to_string_pretty(&f.to_json()).expect("json"));
            ExitCode::from(f.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    let o = &cli.opts;
    let coeffs = Coefficients::parse(&o.coeffs)?;
    match &cli.command {
        Command::Space { action } => space(action),
        Command::Homology { space } => homology(&load_space(space)?, o.up_to, coeffs),
        Command::Pi1 { space } => pi1(&load_space(space)?, o.tc_budget),
        Command::Cobar { space } => cobar_dump(&load_space(space)?, o.up_to.unwrap_or(4), o.max_len.unwrap_or(6)),
        Command::LocalHomology { space, module } => {
            let x = load_space(space)?;
            let m = module_for(&x, module, o.tc_budget)?;
            local(&x, module, &m, o.up_to.unwrap_or(2), coeffs)
        }
        Command::Bar { space, module, words } => {
            let x = load_space(space)?;
            let m = module_for(&x, module, o.tc_budget)?;
            let window = BarWindow { max_words: *words, max_degree: o.up_to.unwrap_or(3), cap: 400_000 };
            bar_report(&x, module, &m, o.max_len.unwrap_or(1), window)
        }
        Command::Detect { map, module } => detect(map, module, o.up_to.unwrap_or(2), o.tc_budget),
    }
}

fn module_for(x: &ReducedSimplicialSet, arg: &str, budget: usize) -> CliResult<PiModule> {
    let g = pi1_presentation(x)?;
    match arg {
        "trivial" => Ok(PiModule::trivial(g.generators().to_vec(), 1)),
        "regular" => {
            let t = require_table(Pi1Data::compute(x, budget)?.table, budget)?;
            Ok(regular_module(&t)?)
        }
        path => {
            let m = load_module(path, g.generators())?;
            m.check_relators(&g)?;
            Ok(m)
        }
    }
}

fn groups_json(hs: &[FGAbelianGroup]) -> Value {
    hs.iter()
        .enumerate()
        .map(|(n, h)| json!({ "degree": n, "group": h, "pretty": h.pretty() }))
        .collect()
}

fn table(title: &str, hs: &[FGAbelianGroup]) -> String {
    let mut s = format!("{title}\n");
    for (n, h) in hs.iter().enumerate() {
        let _ = writeln!(s, "  H{n}  {}", h.pretty());
    }
    s
}

fn space(action: &SpaceCommand) -> CliResult<Report> {
    match action {
        SpaceCommand::List => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in corpus::entries() {
                let counts = e.build()?.counts();
                let _ = writeln!(text, "{:<20} {:<14} {}", e.name, format!("{counts:?}"), e.summary);
                rows.push(json!({ "entry": e, "counts": counts }));
            }
            Ok(Report { json: Value::Array(rows), text })
        }
        SpaceCommand::Show { space } => {
            let x = load_space(space)?;
            let mut text = format!("counts {:?}, euler characteristic {}\n", x.counts(), x.euler_characteristic());
            for dim in 1..=x.top_dim() {
                for key in x.keys(dim) {
                    let faces: Vec<String> = x.stored_faces(key).iter().map(|f| x.describe(f)).collect();
                    let _ = writeln!(text, "  {} (dim {dim}): {}", x.name(key), faces.join(", "));
                }
            }
            let json = json!({
                "counts": x.counts(),
                "euler_characteristic": x.euler_characteristic(),
                "simplicial_set": SimplicialSetJson::from_data(x.data()),
            });
            Ok(Report { json, text })
        }
        SpaceCommand::Export { space } => {
            let j = serde_json::to_value(SimplicialSetJson::from_data(load_space(space)?.data())).expect("json");
            let text = format!("{}\n", serde_json::to_string_pretty(&j).expect("json"));
            Ok(Report { json: j, text })
        }
    }
}

fn homology(x: &ReducedSimplicialSet, up_to: Option<usize>, coeffs: Coefficients) -> CliResult<Report> {
    let c = chain_complex(x.data())?;
    let up_to = up_to.unwrap_or(x.top_dim().max(2));
    let hs = (0..=up_to).map(|n| homology_with(&c, n, coeffs)).collect::<omegaq::Result<Vec<_>>>()?;
    Ok(Report {
        json: json!({ "coefficients": coeffs.symbol(), "homology": groups_json(&hs) }),
        text: table(&format!("homology with {} coefficients", coeffs.symbol()), &hs),
    })
}

fn pi1(x: &ReducedSimplicialSet, budget: usize) -> CliResult<Report> {
    let d = Pi1Data::compute(x, budget)?;
    let g = &d.presentation;
    let relators: Vec<String> = g.relators().iter().map(|w| format_word(g.generators(), w)).collect();
    let ring = h0_relations(&normalized_chains(x.data())?)?;
    let ring_relations: Vec<String> = (0..ring.relations.len()).map(|k| ring.format_relation(k)).collect();
    let order = d.order();
    let mut text = format!("generators  {}\n", g.generators().join(", "));
    let _ = writeln!(text, "relators    {}", if relators.is_empty() { "(none)".into() } else { relators.join("; ") });
    let _ = writeln!(text, "abelianization  {}", d.abelianization.pretty());
    match order {
        Some(n) => {
            let _ = writeln!(text, "order  {n}");
        }
        None => {
            let _ = writeln!(text, "order  unknown (coset enumeration did not close within {budget} cosets)");
        }
    }
    let json = json!({
        "generators": g.generators(),
        "relators": relators,
        "h0_relations": ring_relations,
        "abelianization": d.abelianization,
        "abelianization_pretty": d.abelianization.pretty(),
        "order": order,
        "tc_budget": budget,
    });
    Ok(Report { json, text })
}

fn cobar_dump(x: &ReducedSimplicialSet, max_deg: usize, max_len: usize) -> CliResult<Report> {
    let c = normalized_chains(x.data())?;
    let cb = cobar(&c, max_deg, max_len)?;
    let mut text = format!("cobar window: degree ≤ {max_deg}, length ≤ {max_len}\n");
    let mut gens = Vec::new();
    for (g, info) in cb.generators().iter().enumerate() {
        let g = g as u32;
        let d = cb.format_element(cb.generator_differential(g));
        let _ = writeln!(text, "  D[{}] = {d}   (degree {})", info.name, cb.generator_degree(g));
        gens.push(json!({ "name": info.name, "degree": cb.generator_degree(g), "differential": d }));
    }
    let sizes: Vec<String> = (0..=max_deg).map(|d| cb.basis_size(d).to_string()).collect();
    let _ = writeln!(text, "basis sizes by degree: {}", sizes.join(", "));
    let report = cb.check_d_squared(50_000, 2000, 20_240_601);
    let _ = writeln!(text, "D² = 0: {}", if report.passed() { "yes" } else { "NO" });
    let json = json!({
        "max_deg": max_deg,
        "max_len": max_len,
        "generators": gens,
        "basis_sizes": sizes,
        "d_squared": report,
    });
    Ok(Report { json, text })
}

fn local(x: &ReducedSimplicialSet, id: &str, m: &PiModule, up_to: usize, coeffs: Coefficients) -> CliResult<Report> {
    let g = pi1_presentation(x)?;
    let c = twisted_tensor(&normalized_chains(x.data())?, m, &g)?;
    let hs = (0..=up_to).map(|n| homology_with(&c, n, coeffs)).collect::<omegaq::Result<Vec<_>>>()?;
    Ok(Report {
        json: json!({ "module": id, "rank": m.rank(), "coefficients": coeffs.symbol(), "homology": groups_json(&hs) }),
        text: table(&format!("local homology, module {id} of rank {}, {} coefficients", m.rank(), coeffs.symbol()), &hs),
    })
}

fn bar_report(
    x: &ReducedSimplicialSet,
    id: &str,
    m: &PiModule,
    cobar_len: usize,
    window: BarWindow,
) -> CliResult<Report> {
    let c = normalized_chains(x.data())?;
    let cb = cobar(&c, window.max_degree, cobar_len)?;
    let b = Bar::new(&cb);
    let complex = one_sided_bar(&b, &CobarModule { cobar: &cb, module: m }, &window)?;
    let reported = complex.reported_homology();
    let square_zero = complex.square_zero_where_closed();
    let mut text = format!(
        "B(ΩC, {id}): {} letters, degree ≤ {}, cobar length ≤ {cobar_len}, ε offset {PRINTED_EPSILON_OFFSET}\n",
        window.max_words, window.max_degree
    );
    let ranks = complex.complex.ranks().to_vec();
    let mut rows = Vec::new();
    for (n, r) in ranks.iter().enumerate() {
        let h = reported[n].as_ref().map_or("(not closed in window)".to_string(), FGAbelianGroup::pretty);
        let _ = writeln!(text, "  degree {n}: rank {r}, homology {h}");
        rows.push(json!({ "degree": n, "rank": r, "closed": complex.closed[n], "homology": reported[n] }));
    }
    let _ = writeln!(text, "D² = 0 where closed: {}", if square_zero { "yes" } else { "NO" });
    let json = json!({
        "module": id,
        "window": window,
        "cobar_max_len": cobar_len,
        "epsilon_offset": PRINTED_EPSILON_OFFSET,
        "degrees": rows,
        "square_zero_where_closed": square_zero,
    });
    Ok(Report { json, text })
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Pi1Invariant { name, source, target } => format!("π₁ {name}: {source} vs {target}"),
        Witness::LocalHomology { module, degree, source, target, induced_iso } => format!(
            "H{degree}(-; {module}): {} vs {}{}",
            source.pretty(),
            target.pretty(),
            if *induced_iso { "" } else { ", induced map not an isomorphism" }
        ),
        Witness::OrdinaryHomology { degree, source, target, .. } => {
            format!("H{degree}: {} vs {}", source.pretty(), target.pretty())
        }
    }
}

fn detect(map: &str, modules: &[String], up_to: usize, budget: usize) -> CliResult<Report> {
    let f = load_map(map)?;
    let mut config = DetectConfig::new(up_to, budget)?;
    if !modules.is_empty() {
        let y = ReducedSimplicialSet::new(f.target().clone())?;
        let g = pi1_presentation(&y)?;
        for path in modules {
            let m = load_module(path, g.generators())?;
            m.check_relators(&g)?;
            config = config.with_module(path.clone(), m);
        }
    }
    let v = whitehead_verdict(&f, &config)?;
    let mut text = match &v.outcome {
        Outcome::NotWeakEquivalence { witnesses } => {
            let mut s = format!("NOT a weak equivalence ({} witnesses)\n", witnesses.len());
            for w in witnesses {
                let _ = writeln!(s, "  {}", describe_witness(w));
            }
            s
        }
        Outcome::ConsistentUpTo { depth } => format!("no obstruction found up to degree {depth}\n"),
    };
    for t in &v.transcript {
        let _ = writeln!(text, "  check {:<28} {}", t.check, &t.inputs_hash[..16]);
    }
    Ok(Report { json: serde_json::to_value(&v).expect("json"), text })
}

