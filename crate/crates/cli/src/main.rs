use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ainf_core::diagram::{check_d_squared, enumerate_faces, naturality_check, Diagram, ExportFormat, DEFAULT_BOUND};
use ainf_core::fixtures::{example_over, SHIPPED};
use ainf_core::format::{Bundle, StructureFile};
use ainf_core::structures::{dual_bimodule, dual_self_bimodule, self_bimodule};
use ainf_core::{Field, Report};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact checks for A∞-structures and inner-product diagrams.
#[derive(Parser)]
#[command(name = "ainf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a structure from a file with both formulations.
    Check {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
        /// Largest component arity to check; words up to 2K−1 letters.
        #[arg(long)]
        max_arity: Option<usize>,
        /// Structure to check when the file has several of this kind.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Build a derived bimodule and write it to a new file.
    Make {
        #[arg(value_enum)]
        what: Construction,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Source structure when the file has several candidates.
        #[arg(long)]
        name: Option<String>,
    },
    /// Inner-product diagrams and their face complexes.
    #[command(subcommand)]
    Diagrams(DiagramCommand),
    /// Write a shipped example file, or list them.
    Examples {
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Coefficient field, "rational" or "mod2".
        #[arg(long, default_value = "rational")]
        field: Field,
    },
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// List the cells of the (k,l) complex or export them.
    Faces {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum)]
        export: Option<Export>,
    },
    /// Cell counts by degree.
    Fvector {
        #[command(flatten)]
        shape: Shape,
    },
    /// Check d∘d = 0 on every cell.
    D2 {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        json: bool,
    },
    /// Degree of a diagram such as "<a,m_2(b,c),d>_{1,0}".
    Degree { expr: String },
    /// Check that evaluation intertwines d with the induced differential.
    Naturality {
        #[command(flatten)]
        shape: Shape,
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        out: ReportArgs,
    },
}

#[derive(Args)]
struct Shape {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    /// Refuse shapes with k + l above this.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
}

#[derive(Args)]
struct ReportArgs {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Algebra,
    Bimodule,
    Morphism,
    InnerProduct,
}

impl Kind {
    fn file_kind(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Bimodule => "bimodule",
            Kind::Morphism => "morphism",
            Kind::InnerProduct => "inner_product",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// The dual of a bimodule.
    Dual,
    /// An algebra as a bimodule over itself.
    SelfBimodule,
    /// The dual of the self bimodule.
    DualSelf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Dot,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<StructureFile> {
    StructureFile::load(path).with_context(|| format!("cannot load {}", path.display()))
}

fn emit(mut report: Report, started: Instant, out: &ReportArgs) -> bool {
    if out.timing {
        report.timing_ms = Some(started.elapsed().as_millis());
    }
    if out.json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    report.passed()
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Check {
            kind,
            file,
            max_arity,
            name,
            out,
        } => {
            let started = Instant::now();
            let f = load(&file)?;
            let bundle = f.pick(kind.file_kind(), name.as_deref())?;
            Ok(emit(bundle.check(max_arity), started, &out))
        }
        Command::Make {
            what,
            file,
            output,
            name,
        } => {
            let f = load(&file)?;
            let bundles = match what {
                Construction::Dual => {
                    let Bundle::Bimodule(m) = f.pick("bimodule", name.as_deref())? else {
                        unreachable!()
                    };
                    vec![Bundle::Algebra(m.algebra().clone()), Bundle::Bimodule(Arc::new(dual_bimodule(m)))]
                }
                Construction::SelfBimodule | Construction::DualSelf => {
                    let Bundle::Algebra(a) = f.pick("algebra", name.as_deref())? else {
                        unreachable!()
                    };
                    let m = match what {
                        Construction::SelfBimodule => self_bimodule(a),
                        _ => dual_self_bimodule(a),
                    };
                    vec![Bundle::Algebra(a.clone()), Bundle::Bimodule(Arc::new(m))]
                }
            };
            let made = StructureFile::new(bundles)?;
            made.save(&output)
                .with_context(|| format!("cannot write {}", output.display()))?;
            println!("wrote {}", output.display());
            Ok(true)
        }
        Command::Diagrams(d) => diagrams(d),
        Command::Examples { name, output, field } => {
            let Some(name) = name else {
                for n in SHIPPED {
                    println!("{n}");
                }
                return Ok(true);
            };
            let Some(file) = example_over(&name, field) else {
                bail!("unknown example {name:?}; available: {}", SHIPPED.join(", "));
            };
            match output {
                Some(path) => {
                    file.save(&path)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{}", file.to_json()),
            }
            Ok(true)
        }
    }
}

fn diagrams(command: DiagramCommand) -> Result<bool> {
    match command {
        DiagramCommand::Faces { shape, export } => {
            let fc = enumerate_faces(shape.k, shape.l, shape.bound)?;
            match export {
                Some(Export::Dot) => print!("{}", fc.export(ExportFormat::Dot)),
                Some(Export::Json) => print!("{}", fc.export(ExportFormat::Json)),
                None => {
                    for (i, cell) in fc.cells().iter().enumerate() {
                        let faces: Vec<String> = fc.faces(i).iter().map(|j| j.to_string()).collect();
                        println!("{i}\t{}\t{cell}\t[{}]", cell.degree(), faces.join(" "));
                    }
                }
            }
            Ok(true)
        }
        DiagramCommand::Fvector { shape } => {
            let fc = enumerate_faces(shape.k, shape.l, shape.bound)?;
            let f: Vec<String> = fc.f_vector().iter().map(|n| n.to_string()).collect();
            println!("{}", f.join(" "));
            Ok(true)
        }
        DiagramCommand::D2 { shape, json } => {
            let r = check_d_squared(shape.k, shape.l, shape.bound)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                let v = if r.passed() { "PASS" } else { "FAIL" };
                println!("{v} d∘d = 0 on ({},{}): {} cells", shape.k, shape.l, r.cells);
                println!("  {} terms before cancellation", r.expanded_terms);
                println!("  {} pairs with different outputs", r.different_outputs);
                println!("  {} pairs with the same output", r.same_output);
                for cell in &r.failures {
                    println!("  fails on {cell}");
                }
            }
            Ok(r.passed())
        }
        DiagramCommand::Degree { expr } => {
            let (d, _) = Diagram::parse(&expr)?;
            println!("{}", d.degree());
            Ok(true)
        }
        DiagramCommand::Naturality {
            shape,
            file,
            name,
            out,
        } => {
            let started = Instant::now();
            if shape.k + shape.l > shape.bound {
                bail!("shape ({},{}) exceeds the bound {}", shape.k, shape.l, shape.bound);
            }
            let f = load(&file)?;
            let Bundle::InnerProduct(ip) = f.pick("inner_product", name.as_deref())? else {
                unreachable!()
            };
            let report = naturality_check(shape.k, shape.l, ip.algebra(), ip)?;
            Ok(emit(report, started, &out))
        }
    }
}
