mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qforge::classify::{classify, enumerate_si, report_tables, SiOptions};
use qforge::config::{Caps, RunConfig, VERSION};
use qforge::congruence::{all_congruences, monolith};
use qforge::construct::{alexander, alexander_cyclic, gallery, projection_quandle, GalleryObject, SiqSpec};
use qforge::iso::{are_homologous, quandle_isomorphic};
use qforge::mesh::canonical_mesh;
use qforge::quandle::quandle_from_csv;
use qforge::{AffineMesh, LaurentModule, Quandle};
use serde_json::json;

use render::Output;

#[derive(Parser)]
#[command(name = "qforge", version, about = "Finite medial quandles: meshes, congruences, SI tests, isomorphism")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Maximum number of congruences materialised.
    #[arg(long, global = true)]
    cap_lattice: Option<usize>,
    /// Maximum size of a materialised permutation group.
    #[arg(long, global = true)]
    cap_group: Option<usize>,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed recorded in reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a quandle table and report its structural properties.
    Check { file: PathBuf },
    /// Affine meshes.
    #[command(subcommand)]
    Mesh(MeshCmd),
    /// Congruences.
    #[command(subcommand)]
    Congr(CongrCmd),
    /// Build quandles.
    #[command(subcommand)]
    Make(MakeCmd),
    /// Decide isomorphism of two quandles (exit 0 if isomorphic, 1 if not).
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Print the isomorphism.
        #[arg(long)]
        witness: bool,
    },
    /// Decide homology of two meshes (exit 0 if homologous, 1 if not).
    IsoMesh { a: PathBuf, b: PathBuf },
    /// Classify a medial quandle as latin, reductive, two-element projection or not SI.
    Classify { file: PathBuf },
    /// Enumerate SI medial quandles of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Only involutory quandles.
        #[arg(long)]
        involutory: bool,
        /// Write enumerate-<order>.json and .txt here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the desk-scale classification claims (exit 1 if any fails).
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The built-in example collection.
    #[command(subcommand)]
    Gallery(GalleryCmd),
}

#[derive(Subcommand)]
enum MeshCmd {
    /// Check (M1)-(M4) and indecomposability (exit 0 if valid, 1 if not).
    Validate { file: PathBuf },
    /// The sum of a mesh, as a quandle table.
    Sum { file: PathBuf },
    /// The canonical mesh of a medial quandle.
    Canonical { file: PathBuf },
}

#[derive(Subcommand)]
enum CongrCmd {
    /// Every congruence.
    List { file: PathBuf },
    /// The least non-trivial congruence, if any.
    Monolith { file: PathBuf },
    /// Subdirect irreducibility (exit 0 if SI, 1 if not).
    Si { file: PathBuf },
}

#[derive(Subcommand)]
enum MakeCmd {
    /// Projection quandle `a * b = b` on n elements.
    Projection { n: usize },
    /// Alexander quandle `(Z_n, k)`, or over a module file.
    Alexander {
        #[arg(required_unless_present = "module")]
        n: Option<u64>,
        #[arg(required_unless_present = "module", allow_hyphen_values = true)]
        k: Option<i64>,
        /// Module JSON `{"group":{"orders":[..]},"t":[[..]]}`.
        #[arg(long, conflicts_with_all = ["n", "k"])]
        module: Option<PathBuf>,
    },
    /// siq(A, t, C) from a specification file or a cyclic shorthand.
    Siq {
        /// Specification JSON `{"module":…,"c":[…]}`.
        #[arg(required_unless_present = "cyclic")]
        spec: Option<PathBuf>,
        /// `n,k` for the module `(Z_n, k)`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "c")]
        cyclic: Option<Vec<i64>>,
        /// Constants for the cyclic shorthand, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Option<Vec<i64>>,
        /// Print the presenting mesh instead of the table.
        #[arg(long)]
        mesh: bool,
    },
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// Names and notes.
    List,
    /// Write every entry as JSON files into a directory.
    Export { dir: PathBuf },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A quandle from JSON (`{"size":…,"table":…}`) or CSV rows.
fn load_quandle(path: &Path) -> Result<Quandle> {
    let text = read(path)?;
    let q = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(anyhow::Error::from)
    } else {
        quandle_from_csv(&text).map_err(anyhow::Error::from)
    };
    q.with_context(|| format!("loading quandle {}", path.display()))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("loading {what} {}", path.display()))
}

fn config(g: &Global) -> Result<RunConfig> {
    let mut caps = Caps::from_env()?;
    if let Some(c) = g.cap_lattice {
        caps.lattice = c;
    }
    if let Some(c) = g.cap_group {
        caps.group = c;
    }
    if caps.lattice == 0 || caps.group == 0 {
        bail!("caps must be positive");
    }
    Ok(RunConfig {
        caps,
        jobs: g.jobs,
        outdir: None,
        seed: g.seed,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = config(&cli.global)?;
    let out = Output::new(cli.global.format == Format::Json);
    match cli.command {
        Command::Check { file } => {
            let q = match load_quandle(&file) {
                Ok(q) => q,
                Err(e) => {
                    out.value(&json!({"valid": false, "error": format!("{e:#}")}), &format!("invalid: {e:#}"));
                    return Ok(ExitCode::from(1));
                }
            };
            let nil = q.lmlt_nilpotency_degree(cfg.caps.group).ok().flatten();
            let medial = q.is_medial();
            let v = json!({
                "valid": true,
                "size": q.size(),
                "orbits": q.orbits(),
                "medial": medial,
                "connected": q.is_connected(),
                "latin": q.is_latin(),
                "involutory": q.is_involutory(),
                "reductivity": q.reductivity_degree(),
                "quasi_reductive": q.is_quasi_reductive(),
                "lmlt_nilpotency": nil,
                "subdirectly_irreducible": monolith(&q).is_some(),
            });
            out.value(&v, &render::fields(&v));
        }
        Command::Mesh(MeshCmd::Validate { file }) => {
            let m: AffineMesh = match load_json(&file, "mesh") {
                Ok(m) => m,
                Err(e) => {
                    out.value(&json!({"valid": false, "error": format!("{e:#}")}), &format!("invalid: {e:#}"));
                    return Ok(ExitCode::from(1));
                }
            };
            let v = json!({
                "valid": true,
                "summands": m.groups().iter().map(|g| g.order()).collect::<Vec<_>>(),
                "indecomposable": m.is_indecomposable(),
                "reductivity": m.reductivity_from_phis(),
            });
            out.value(&v, &render::fields(&v));
            if !m.is_indecomposable() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Mesh(MeshCmd::Sum { file }) => {
            let m: AffineMesh = load_json(&file, "mesh")?;
            out.quandle(m.sum()?.quandle());
        }
        Command::Mesh(MeshCmd::Canonical { file }) => {
            let (m, _) = canonical_mesh(&load_quandle(&file)?)?;
            out.value(&serde_json::to_value(&m)?, &render::mesh(&m));
        }
        Command::Congr(CongrCmd::List { file }) => {
            let q = load_quandle(&file)?;
            let lattice = all_congruences(&q, cfg.caps.lattice)?;
            let text = lattice.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
            out.value(&serde_json::to_value(&lattice)?, &text);
        }
        Command::Congr(CongrCmd::Monolith { file }) => {
            let m = monolith(&load_quandle(&file)?);
            let text = m.as_ref().map_or("none".to_string(), |c| c.to_string());
            out.value(&serde_json::to_value(&m)?, &text);
        }
        Command::Congr(CongrCmd::Si { file }) => {
            let si = monolith(&load_quandle(&file)?).is_some();
            out.value(&json!(si), &si.to_string());
            return Ok(ExitCode::from(if si { 0 } else { 1 }));
        }
        Command::Make(MakeCmd::Projection { n }) => {
            if n == 0 {
                bail!("a quandle needs at least one element");
            }
            out.quandle(&projection_quandle(n));
        }
        Command::Make(MakeCmd::Alexander { n, k, module }) => {
            let q = match module {
                Some(path) => {
                    let m: LaurentModule = load_json(&path, "module")?;
                    alexander(m.group(), m.t())?
                }
                None => alexander_cyclic(n.expect("required by clap"), k.expect("required by clap"))?,
            };
            out.quandle(&q);
        }
        Command::Make(MakeCmd::Siq { spec, cyclic, c, mesh }) => {
            let spec: SiqSpec = match (spec, cyclic) {
                (Some(path), _) => load_json(&path, "siq specification")?,
                (None, Some(nk)) => {
                    if nk.len() != 2 || nk[0] <= 0 {
                        bail!("--cyclic takes n,k with n positive");
                    }
                    SiqSpec::cyclic(nk[0] as u64, nk[1], &c.unwrap_or_default())?
                }
                (None, None) => unreachable!("required by clap"),
            };
            if mesh {
                let m = spec.mesh()?;
                out.value(&serde_json::to_value(&m)?, &render::mesh(&m));
            } else {
                out.quandle(&spec.quandle()?);
            }
        }
        Command::Iso { a, b, witness } => {
            let (qa, qb) = (load_quandle(&a)?, load_quandle(&b)?);
            let f = quandle_isomorphic(&qa, &qb);
            let v = match (&f, witness) {
                (Some(f), true) => json!({"isomorphic": true, "witness": f}),
                _ => json!({"isomorphic": f.is_some()}),
            };
            out.value(&v, &render::fields(&v));
            return Ok(ExitCode::from(if f.is_some() { 0 } else { 1 }));
        }
        Command::IsoMesh { a, b } => {
            let ma: AffineMesh = load_json(&a, "mesh")?;
            let mb: AffineMesh = load_json(&b, "mesh")?;
            let w = are_homologous(&ma, &mb, cfg.caps.aut)?;
            let v = json!({"homologous": w.is_some(), "witness": w});
            out.value(&v, &render::fields(&v));
            return Ok(ExitCode::from(if w.is_some() { 0 } else { 1 }));
        }
        Command::Classify { file } => {
            let c = classify(&load_quandle(&file)?)?;
            let v = serde_json::to_value(&c)?;
            out.value(&v, &render::fields(&v));
        }
        Command::Enumerate { order, involutory, out: dir } => {
            let opts = SiOptions {
                involutory_only: involutory,
            };
            let rep = enumerate_si(order, &opts, &cfg)?;
            let v = serde_json::to_value(&rep)?;
            let text = render::enumeration(&rep);
            match dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    let stem = if involutory {
                        format!("enumerate-{order}-involutory")
                    } else {
                        format!("enumerate-{order}")
                    };
                    write_file(&dir.join(format!("{stem}.json")), &(serde_json::to_string_pretty(&v)? + "\n"))?;
                    write_file(&dir.join(format!("{stem}.txt")), &text)?;
                }
                None => out.value(&v, &text),
            }
        }
        Command::Report { out: dir } => {
            let rep = report_tables(dir.as_deref(), &cfg)?;
            out.value(&serde_json::to_value(&rep)?, rep.to_text().trim_end());
            return Ok(ExitCode::from(if rep.all_pass() { 0 } else { 1 }));
        }
        Command::Gallery(GalleryCmd::List) => {
            let entries = gallery();
            let v: Vec<_> = entries.iter().map(|e| json!({"name": e.name, "note": e.note})).collect();
            let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
            let text = entries
                .iter()
                .map(|e| format!("{:width$}  {}", e.name, e.note))
                .collect::<Vec<_>>()
                .join("\n");
            out.value(&json!(v), &text);
        }
        Command::Gallery(GalleryCmd::Export { dir }) => {
            std::fs::create_dir_all(&dir)?;
            let mut index = Vec::new();
            for e in gallery() {
                let q = e.quandle()?;
                let mut files = vec![format!("{}.json", e.name)];
                write_file(&dir.join(&files[0]), &(serde_json::to_string(&q)? + "\n"))?;
                match &e.object {
                    GalleryObject::Siq(spec) => {
                        let name = format!("{}.siq.json", e.name);
                        write_file(&dir.join(&name), &(serde_json::to_string(spec)? + "\n"))?;
                        files.push(name);
                    }
                    GalleryObject::Mesh(_) | GalleryObject::Quandle(_) => {}
                }
                if let Some(m) = e.mesh()? {
                    let name = format!("{}.mesh.json", e.name);
                    write_file(&dir.join(&name), &(serde_json::to_string(&m)? + "\n"))?;
                    files.push(name);
                }
                index.push(json!({"name": e.name, "note": e.note, "size": q.size(), "files": files}));
            }
            let v = json!({"version": VERSION, "config_hash": cfg.hash(), "entries": index});
            write_file(&dir.join("index.json"), &(serde_json::to_string_pretty(&v)? + "\n"))?;
            out.value(&json!({"written": index.len()}), &format!("wrote {} entries to {}", index.len(), dir.display()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
