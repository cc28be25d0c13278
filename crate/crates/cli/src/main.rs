//! `idemgen`: command-line front end.
//!
//! Machine mode (`--format json`, the default) prints one JSON document on
//! stdout. Exit status: 0 success or true, 1 decided false, 2 input error,
//! 3 capability or overflow.

mod input;
mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use idemgen::action::{ig_green, IgRel};
use idemgen::bgh::{build_bgh, BghBand, BghContext, ChainVerifier, Provenance};
use idemgen::biorder::Biorder;
use idemgen::green::{egg_box_dot, green_data};
use idemgen::group::{abelian_invariants, enumerate_finite, mihailova, GroupOracle, GroupPresentation, OracleKind, Word};
use idemgen::rees::{ReesContext, ReesTriple, RegularWordProblem};
use idemgen::regularity::{Regularity, RegularityChecker};
use idemgen::schreier::{presentation_B, presentation_F, SchreierSystem};
use idemgen::table::validate_table;
use idemgen::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "idemgen", version, about = "Bands, biordered sets and free idempotent generated semigroups")]
struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Bound on group enumeration.
    #[arg(long, default_value_t = 4096, global = true)]
    cap: usize,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Word-problem oracle for maximal subgroups.
    #[arg(long, value_enum, default_value_t = OracleChoice::Auto, global = true)]
    oracle: OracleChoice,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleChoice {
    Free,
    Finite,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelChoice {
    R,
    L,
    D,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity and report idempotents.
    Validate {
        #[arg(long)]
        table: PathBuf,
    },
    /// Green's relations and the J-order of D-classes.
    Green {
        #[arg(long)]
        table: PathBuf,
    },
    /// Egg-box diagram in DOT.
    Eggbox {
        #[arg(long)]
        table: PathBuf,
    },
    /// Biordered set of idempotents.
    ExtractBiorder {
        #[arg(long)]
        table: PathBuf,
    },
    /// Green's relation between two idempotents of IG(E).
    IgGreen {
        /// Biorder or table file.
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        e: String,
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value_t = RelChoice::D)]
        rel: RelChoice,
    },
    /// Regularity of a word, with certificate.
    Regular {
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Schreier system of the R-class of `e`.
    Schreier {
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        e: String,
    },
    /// Maximal subgroup presentation over bracket generators.
    PresentB {
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        e: String,
    },
    /// Maximal subgroup presentation over `f_ij`.
    PresentF {
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        e: String,
    },
    /// Rees coordinates of the D-class of `e`, with a sampled round-trip check.
    Rees {
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        e: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Rees triple of a word over one D-class.
    Pi {
        #[arg(long)]
        biorder: PathBuf,
        /// Base idempotent; defaults to the first letter.
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        word: String,
    },
    /// Word over E representing a Rees triple.
    Rho {
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        e: String,
        #[arg(long)]
        i: String,
        /// Comma-separated `f` letters; empty for the identity.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        j: String,
    },
    /// Equality of two regular words in IG(E).
    WpRegular {
        #[arg(long)]
        biorder: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Rewrite a presentation into `ab = c` triples.
    Normalize {
        #[arg(long)]
        presentation: PathBuf,
    },
    /// Fibre product generators over a presented group.
    Mihailova {
        #[arg(long)]
        presentation: PathBuf,
    },
    /// Build the band for a group and subgroup.
    BuildBgh {
        /// Presentation with `subgroup`, raw or normalized.
        #[arg(long)]
        presentation: PathBuf,
        /// Table destination; provenance goes to `<stem>.provenance.json` beside it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide membership of an `f` word and produce the equality chain.
    DemoMembership {
        #[arg(long)]
        band: PathBuf,
        /// Defaults to `<stem>.provenance.json` beside the band.
        #[arg(long)]
        provenance: Option<PathBuf>,
        #[arg(long)]
        word: String,
    },
}

/// Result of a verb: the document and the exit status.
struct Outcome {
    value: Value,
    status: u8,
    /// Replaces the generic text rendering.
    text: Option<String>,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, status: 0, text: None }
    }

    fn decided(value: Value, yes: bool) -> Self {
        Outcome {
            value,
            status: if yes { 0 } else { 1 },
            text: None,
        }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

impl Cli {
    fn oracle_kind(&self) -> OracleKind {
        match self.oracle {
            OracleChoice::Free => OracleKind::Free,
            OracleChoice::Finite => OracleKind::Finite { cap: self.cap },
            OracleChoice::Auto => OracleKind::Auto { cap: self.cap },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match (cli.format, out.text) {
                (Format::Json, _) => format!("{}\n", serde_json::to_string_pretty(&out.value).expect("serializable")),
                (Format::Text, Some(t)) => t,
                (Format::Text, None) => render::text(&out.value),
            };
            emit(&body);
            ExitCode::from(out.status)
        }
        Err(e) => {
            if cli.format == Format::Json {
                let doc = json!({"error": {"code": e.code(), "message": e.to_string()}});
                emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")));
            }
            eprintln!("idemgen: {} ({})", e, e.code());
            ExitCode::from(if e.is_capability() { 3 } else { 2 })
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(body: &str) {
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { table } => {
            let t = input::table(table)?;
            let r = validate_table(&t);
            let ok = r.is_valid();
            let mut v = serde_json::to_value(&r)?;
            v["n"] = json!(t.len());
            Ok(Outcome::decided(v, ok))
        }
        Command::Green { table } => {
            let t = input::table(table)?;
            let g = green_data(&t)?;
            let text = render::green(&g);
            Ok(Outcome::ok(serde_json::to_value(&g)?).with_text(text))
        }
        Command::Eggbox { table } => {
            let dot = egg_box_dot(&green_data(&input::table(table)?)?);
            Ok(Outcome::ok(json!({ "dot": dot })).with_text(dot))
        }
        Command::ExtractBiorder { table } => {
            let b = idemgen::extract_biorder(&input::table(table)?)?;
            Ok(Outcome::ok(serde_json::from_str(&b.to_json())?))
        }
        Command::IgGreen { biorder, e, f, rel } => {
            let b = input::biorder(biorder)?;
            let (e, f) = (b.index_of(e)?, b.index_of(f)?);
            let all = [IgRel::R, IgRel::L, IgRel::D].map(|r| ig_green(&b, e, f, r));
            let holds = all[*rel as usize];
            let v = json!({
                "e": b.name(e), "f": b.name(f),
                "R": all[0], "L": all[1], "D": all[2],
                "holds": holds,
            });
            Ok(Outcome::decided(v, holds))
        }
        Command::Regular { biorder, word } => {
            let b = input::biorder(biorder)?;
            let w = b.parse_word(word)?;
            let checker = RegularityChecker::new(b.clone());
            match checker.is_regular(&w)? {
                Regularity::Regular(c) => {
                    let mut v = serde_json::to_value(&c)?;
                    v["verdict"] = json!("regular");
                    v["e"] = json!(b.name(c.e));
                    v["r_witness"] = json!(b.name(c.r_witness));
                    v["l_witness"] = json!(b.name(c.l_witness));
                    Ok(Outcome::decided(v, true))
                }
                Regularity::NotRegular => Ok(Outcome::decided(json!({"verdict": "not-regular"}), false)),
            }
        }
        Command::Schreier { biorder, e } => {
            let b = input::biorder(biorder)?;
            let s = SchreierSystem::new(&b, b.index_of(e)?)?;
            s.check()?;
            Ok(Outcome::ok(schreier_json(&b, &s)))
        }
        Command::PresentB { biorder, e } => {
            let b = input::biorder(biorder)?;
            let p = presentation_B(&b, b.index_of(e)?)?;
            Ok(Outcome::ok(presentation_summary(&p, cli.cap)))
        }
        Command::PresentF { biorder, e } => {
            let b = input::biorder(biorder)?;
            let p = presentation_F(&b, b.index_of(e)?)?;
            Ok(Outcome::ok(presentation_summary(&p, cli.cap)))
        }
        Command::Rees { biorder, e, samples } => {
            let b = input::biorder(biorder)?;
            let ctx = ReesContext::new(&b, b.index_of(e)?)?;
            rees(cli, &ctx, *samples).map(Outcome::ok)
        }
        Command::Pi { biorder, e, word } => {
            let b = input::biorder(biorder)?;
            let w = b.parse_word(word)?;
            let base = match e {
                Some(e) => b.index_of(e)?,
                None => *w.first().ok_or(Error::EmptyWord)?,
            };
            let ctx = ReesContext::new(&b, base)?;
            let t = ctx.pi(&w)?;
            Ok(Outcome::ok(triple_json(&ctx, &t)))
        }
        Command::Rho { biorder, e, i, word, j } => {
            let b = input::biorder(biorder)?;
            let ctx = ReesContext::new(&b, b.index_of(e)?)?;
            let i = input::label(&ctx.row_labels, i)?;
            let j = input::label(&ctx.col_labels, j)?;
            let t = ReesTriple::new(i, ctx.presentation().parse_word(word)?, j);
            let w = ctx.rho(&t)?;
            Ok(Outcome::ok(json!({
                "triple": ctx.format_triple(&t),
                "word": b.format_word(&w),
                "length": w.len(),
            })))
        }
        Command::WpRegular { biorder, u, v } => {
            let b = input::biorder(biorder)?;
            let (u, v) = (b.parse_word(u)?, b.parse_word(v)?);
            let wp = RegularWordProblem::new(b.clone(), cli.oracle_kind());
            let d = wp.decide(&u, &v)?;
            let mut out = serde_json::to_value(&d)?;
            if let Some(base) = d.base {
                let p = presentation_B(&b, base)?;
                out["base"] = json!(b.name(base));
                for (key, w) in [("phi_u", &d.phi_u), ("phi_v", &d.phi_v)] {
                    out[key] = json!(w.as_ref().map(|w| p.word_tokens(w)));
                }
            }
            for key in ["u", "v"] {
                for w in ["e", "r_witness", "l_witness"] {
                    let x = out[key][w].as_u64().expect("index") as usize;
                    out[key][w] = json!(b.name(x));
                }
            }
            Ok(Outcome::decided(out, d.equal))
        }
        Command::Normalize { presentation } => {
            let np = input::normalized(presentation)?;
            Ok(Outcome::ok(np.to_json_value()))
        }
        Command::Mihailova { presentation } => {
            let p = input::presentation(presentation)?;
            let m = mihailova(&p)?;
            let words = |ws: &[Word]| ws.iter().map(|w| m.group.word_tokens(w)).collect::<Vec<_>>();
            Ok(Outcome::ok(json!({
                "group": m.group.to_json_value(),
                "bgens": words(&m.bgens),
                "closed": words(&m.closed),
            })))
        }
        Command::BuildBgh { presentation, out } => {
            let band = build_bgh(&input::normalized(presentation)?)?;
            build_bgh_output(&band, out.as_deref())
        }
        Command::DemoMembership { band, provenance, word } => {
            let sidecar = provenance.clone().unwrap_or_else(|| sidecar_path(band));
            let table = input::table(band)?;
            let prov: Provenance = serde_json::from_str(&input::read(&sidecar)?)?;
            let band = BghBand::from_parts(&table, &prov)?;
            demo(cli, band, word)
        }
    }
}

fn schreier_json(b: &Biorder, s: &SchreierSystem) -> Value {
    let words = |ws: &[Vec<usize>]| ws.iter().map(|w| b.format_word(w)).collect::<Vec<_>>();
    let idems: Vec<Vec<Option<&str>>> = s
        .e_idem
        .iter()
        .map(|row| row.iter().map(|x| x.map(|e| b.name(e))).collect())
        .collect();
    json!({
        "base": b.name(s.automaton.base),
        "rows": s.rows(),
        "cols": s.cols(),
        "r": words(&s.r),
        "r_prime": words(&s.r_prime),
        "idempotents": idems,
        "brackets": (0..s.brackets.len()).map(|k| s.bracket_name(b, k)).collect::<Vec<_>>(),
    })
}

fn presentation_summary(p: &GroupPresentation, cap: usize) -> Value {
    let inv = abelian_invariants(p.ngens(), &p.relators());
    json!({
        "presentation": p.to_json_value(),
        "abelianization": {"free_rank": inv.free_rank, "torsion": inv.torsion},
        "order": enumerate_finite(p, cap).order(),
        "cap": cap,
    })
}

fn triple_json(ctx: &ReesContext, t: &ReesTriple) -> Value {
    json!({
        "i": ctx.row_labels[t.i],
        "word": ctx.presentation().word_tokens(&t.word),
        "j": ctx.col_labels[t.j],
        "triple": ctx.format_triple(t),
    })
}

fn rees(cli: &Cli, ctx: &ReesContext, samples: usize) -> Result<Value> {
    let f = ctx.presentation();
    let p: Vec<Vec<Option<String>>> = (0..ctx.cols())
        .map(|j| (0..ctx.rows()).map(|i| ctx.p(j, i).map(|w| f.format_word(&w))).collect())
        .collect();
    let k = ctx.schreier.k_pairs();
    // Round trip π(ρ(t)) = t on random triples, when an oracle is available.
    let check = match cli.oracle_kind().build(f) {
        Ok(oracle) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut failures = Vec::new();
            for _ in 0..samples {
                let i = rng.gen_range(0..ctx.rows());
                let j = rng.gen_range(0..ctx.cols());
                let len = rng.gen_range(0..4);
                let word: Word = (0..len)
                    .map(|_| {
                        let (a, b) = k[rng.gen_range(0..k.len())];
                        let x = ctx.f_letter(a, b).expect("pair in K");
                        if rng.gen() {
                            x.inverse()
                        } else {
                            x
                        }
                    })
                    .collect();
                let t = ReesTriple::new(i, word, j);
                let back = ctx.pi(&ctx.rho(&t)?)?;
                if back.i != t.i || back.j != t.j || !oracle.equal(&back.word, &t.word)? {
                    failures.push(ctx.format_triple(&t));
                }
            }
            json!({"samples": samples, "seed": cli.seed, "failures": failures})
        }
        Err(e) if e.is_capability() => json!({"skipped": e.to_string()}),
        Err(e) => return Err(e),
    };
    Ok(json!({
        "base": ctx.biorder().name(ctx.base()),
        "rows": ctx.row_labels,
        "cols": ctx.col_labels,
        "k": k.iter().map(|&(i, j)| [&ctx.row_labels[i], &ctx.col_labels[j]]).collect::<Vec<_>>(),
        "p": p,
        "presentation": f.to_json_value(),
        "round_trip": check,
    }))
}

fn sidecar_path(table: &Path) -> PathBuf {
    let stem = table.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    table.with_file_name(format!("{stem}.provenance.json"))
}

fn build_bgh_output(band: &BghBand, out: Option<&Path>) -> Result<Outcome> {
    let table: Value = serde_json::from_str(&band.table.to_json())?;
    let prov = serde_json::to_value(band.provenance())?;
    let summary = json!({
        "elements": band.len(),
        "generators": band.presentation.generators,
        "subgroup": band.subgroup.iter().map(|&b| &band.presentation.generators[b]).collect::<Vec<_>>(),
        "i": band.row_labels(),
        "j": band.col_labels(),
    });
    match out {
        Some(path) => {
            let side = sidecar_path(path);
            input::write(path, &serde_json::to_string_pretty(&table)?)?;
            input::write(&side, &serde_json::to_string_pretty(&prov)?)?;
            let mut v = summary;
            v["table"] = json!(path.display().to_string());
            v["provenance"] = json!(side.display().to_string());
            Ok(Outcome::ok(v))
        }
        None => {
            let mut v = summary;
            v["table"] = table;
            v["provenance"] = prov;
            Ok(Outcome::ok(v))
        }
    }
}

fn demo(cli: &Cli, band: BghBand, word: &str) -> Result<Outcome> {
    let ctx = BghContext::new(band)?;
    let g_oracle = GroupOracle::finite(&ctx.g_presentation(), cli.cap)?;
    let v = ChainVerifier::new(ctx, cli.cap)?;
    let f = v.ctx.f_presentation().clone();
    let w = f.parse_word(word)?;
    let d = v.equality_demo(&w, &g_oracle)?;
    let g = v.ctx.g_presentation();
    let band = &v.ctx.band;
    let chain = d.chain.as_ref().map(|c| {
        let steps: Vec<Value> = c
            .steps
            .iter()
            .zip(c.pairs.windows(2))
            .map(|(s, p)| {
                json!({
                    "kind": s.kind,
                    "via": s.via.map(|e| band.name(e)),
                    "u": v.ctx.prime.format_triple(&p[1].0),
                    "v": v.ctx.double.format_triple(&p[1].1),
                })
            })
            .collect();
        let (u0, v0) = c.first();
        json!({
            "start": {"u": v.ctx.prime.format_triple(u0), "v": v.ctx.double.format_triple(v0)},
            "steps": steps,
            "verified": true,
        })
    });
    let out = json!({
        "word": f.word_tokens(&w),
        "equal": d.equal,
        "g_word": g.word_tokens(&d.g_word),
        "b_word": d.b_word.as_ref().map(|bw| bw.iter().map(|&b| &g.generators[b]).collect::<Vec<_>>()),
        "chain": chain,
    });
    let text = render::demo(&out);
    Ok(Outcome::decided(out, d.equal).with_text(text))
}
