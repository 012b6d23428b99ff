//! Command-line front end: generate graphs, enumerate r-independence
//! complexes, compute homology, run the Morse constructions, verify the
//! closed-form homotopy types against computation, and reproduce the grid
//! homology table.
//!
//! Exit codes: 0 ok/PASS, 1 verification FAIL, 2 usage, 3 face cap
//! exceeded, 4 homology window past the enumerated dimensions.

mod genspec;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use indcomp::complex::{independence_complex, ComplexError, EnumerationOptions, SimplicialComplex};
use indcomp::formulas::{self, decompose_r, expected_homology, HomotopyType};
use indcomp::graph::Graph;
use indcomp::homology::{
    betti_mod2, reduced_homology_threaded, HomologyError, HomologySummary,
};
use indcomp::morse::{
    cycle_morse_matching, multipartite_matching, path_perfect_matching, tree_collapse,
    tree_matching, whisker_matching, MorseResult,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_WINDOW: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Failure {
        match e {
            ComplexError::FaceCapExceeded { .. } => fail(EXIT_CAP, e.to_string()),
            other => fail(EXIT_USAGE, other.to_string()),
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Failure {
        match e {
            HomologyError::WindowTruncated { .. } => fail(EXIT_WINDOW, e.to_string()),
            other => fail(EXIT_USAGE, other.to_string()),
        }
    }
}

impl From<indcomp::morse::MorseError> for Failure {
    fn from(e: indcomp::morse::MorseError) -> Failure {
        fail(EXIT_FAIL, e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "indcomp", version, about = "r-independence complexes: enumeration, homology, Morse matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Args)]
struct Source {
    /// Generator spec, e.g. path:6, grid:2:4, mycielskian:C4:4
    #[arg(long = "gen", conflicts_with = "file")]
    gen: Option<String>,
    /// Edge-list file (`n m` header, then `u v` lines, `#` comments)
    #[arg(long, conflicts_with = "gen")]
    file: Option<std::path::PathBuf>,
}

impl Source {
    fn load(&self) -> Result<(Graph, String), Failure> {
        match (&self.gen, &self.file) {
            (Some(spec), None) => {
                let g = genspec::parse_graph_spec(spec).map_err(|e| fail(EXIT_USAGE, e))?;
                Ok((g, spec.clone()))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
                let g = Graph::parse_edge_list(&text).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
                Ok((g, path.display().to_string()))
            }
            _ => Err(fail(EXIT_USAGE, "exactly one of --gen or --file is required")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated graph in edge-list form
    Gen {
        /// Generator spec, e.g. path:6, grid:2:4, mycielskian:C4:4
        #[arg(long = "gen")]
        gen: String,
    },
    /// Enumerate an r-independence complex and export its faces
    Complex {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: usize,
        /// Stop enumerating above this dimension
        #[arg(long = "max-dim")]
        max_dim: Option<isize>,
        /// Face-count guard
        #[arg(long, default_value_t = 50_000_000)]
        cap: usize,
    },
    /// Compute reduced integer homology
    Homology {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: usize,
        /// Dimension window LO HI (default: the full enumerated range)
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        window: Option<Vec<isize>>,
        #[arg(long = "max-dim")]
        max_dim: Option<isize>,
        #[arg(long, default_value_t = 50_000_000)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run a named Morse construction and export the matching
    Morse {
        #[command(subcommand)]
        construction: MorseCmd,
    },
    /// Check a closed-form homotopy type against computed homology
    Verify {
        #[command(subcommand)]
        family: VerifyCmd,
    },
    /// Reproduce the grid-graph homology table
    Table {
        #[arg(long, default_value_t = 5)]
        rows: usize,
        #[arg(long, default_value_t = 5)]
        cols: usize,
        /// Unlock the 9 x 9 tier (windowed via the mod-2 oracle)
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 50_000_000)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum MorseCmd {
    /// Perfect matching on Ind_{d-2}(P_n)
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Composite matching on Ind_{d-2}(C_n)
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Leaf matching on Ind_r(W(base))
    Whisker {
        #[arg(long)]
        base: String,
        #[arg(long)]
        r: usize,
    },
    /// First-vertex matching on Ind_r(K_{m_1,...,m_s})
    Multipartite {
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        #[arg(long)]
        r: usize,
    },
    /// Leftmost-leaf matching on Ind_r(B_h^m)
    Tree {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        r: usize,
    },
    /// Collapse Ind_r(B_h^m) onto the subcomplex avoiding depth h-(t+1)
    TreeCollapse {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    Multipartite {
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        #[arg(long)]
        r: usize,
    },
    Whiskered {
        /// Base graph (compact name: P<n>, C<n>, K<n>)
        #[arg(long)]
        base: String,
        #[arg(long)]
        r: usize,
    },
    Leafy {
        #[arg(long)]
        base: String,
        #[arg(long, value_delimiter = ',')]
        leaves: Vec<usize>,
        #[arg(long)]
        r: usize,
    },
    MaryTree {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        r: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Gen { gen } => {
            let g = genspec::parse_graph_spec(&gen).map_err(|e| fail(EXIT_USAGE, e))?;
            print!("{}", g.to_edge_list());
            Ok(0)
        }
        Command::Complex { source, r, max_dim, cap } => {
            let (g, _) = source.load()?;
            check_r(r)?;
            let k = independence_complex(&g, r, &EnumerationOptions { max_dim, face_cap: cap })?;
            print!("{}", k.export_text());
            Ok(0)
        }
        Command::Homology { source, r, window, max_dim, cap, format, threads } => {
            let (g, label) = source.load()?;
            check_r(r)?;
            let window = match window.as_deref() {
                Some([lo, hi]) => Some((*lo, *hi)),
                Some(_) => return Err(fail(EXIT_USAGE, "--window takes LO HI")),
                None => None,
            };
            // a window bounds how deep enumeration has to go
            let enum_dim = max_dim.or(window.map(|(_, hi)| hi + 1));
            let k = independence_complex(&g, r, &EnumerationOptions { max_dim: enum_dim, face_cap: cap })?;
            let (lo, hi) = window.unwrap_or((0, k.dim().max(0)));
            let hom = reduced_homology_threaded(&k, lo, hi, threads)?;
            match format {
                Format::Text => {
                    println!("graph: {label}");
                    println!("r: {r}");
                    println!("window: {lo} {hi}");
                    print!("{}", hom.report());
                }
                Format::Kv => {
                    let mut kv = Kv::new();
                    kv.push("homology.graph", label);
                    kv.push("homology.r", r);
                    kv.push("homology.window.lo", lo);
                    kv.push("homology.window.hi", hi);
                    kv.push_homology("homology", &hom);
                    print!("{kv}");
                }
            }
            Ok(0)
        }
        Command::Morse { construction } => run_morse(construction),
        Command::Verify { family } => run_verify(family),
        Command::Table { rows, cols, slow, threads, format, cap } => {
            run_table(rows, cols, slow, threads, format, cap)
        }
    }
}

fn check_r(r: usize) -> Result<(), Failure> {
    if r == 0 {
        return Err(fail(EXIT_USAGE, "r must be at least 1"));
    }
    Ok(())
}

fn print_morse(res: &MorseResult) {
    print!("{}", res.export_text());
}

fn run_morse(cmd: MorseCmd) -> Result<u8, Failure> {
    match cmd {
        MorseCmd::Path { n, d } => print_morse(&path_perfect_matching(n, d)?),
        MorseCmd::Cycle { n, d } => print_morse(&cycle_morse_matching(n, d)?),
        MorseCmd::Whisker { base, r } => {
            check_r(r)?;
            let g = genspec::parse_compact(&base).map_err(|e| fail(EXIT_USAGE, e))?;
            print_morse(&whisker_matching(&g, r)?);
        }
        MorseCmd::Multipartite { parts, r } => {
            check_r(r)?;
            print_morse(&multipartite_matching(&parts, r)?);
        }
        MorseCmd::Tree { m, h, r } => {
            check_r(r)?;
            check_m(m)?;
            print_morse(&tree_matching(m, h, r)?);
        }
        MorseCmd::TreeCollapse { m, h, r } => {
            check_r(r)?;
            check_m(m)?;
            let sub = tree_collapse(m, h, r)?;
            print!("{}", sub.export_text());
        }
    }
    Ok(0)
}

fn check_m(m: usize) -> Result<(), Failure> {
    if m < 2 {
        return Err(fail(EXIT_USAGE, "m must be at least 2"));
    }
    Ok(())
}

/// Full-range homology of `Ind_r(g)`.
fn full_homology(g: &Graph, r: usize) -> Result<(SimplicialComplex, HomologySummary), Failure> {
    let k = independence_complex(g, r, &EnumerationOptions::default())?;
    let hom = reduced_homology_threaded(&k, 0, k.dim().max(0), 1)?;
    Ok((k, hom))
}

struct Verification {
    name: String,
    formula: HomotopyType,
    hom: HomologySummary,
    morse_note: Option<String>,
    extra_notes: Vec<String>,
}

impl Verification {
    fn passes(&self) -> bool {
        expected_homology(&self.formula).matches(&self.hom)
    }

    fn print(&self) -> u8 {
        println!("formula: {}", self.formula);
        let nonzero = self.hom.nonzero();
        if nonzero.is_empty() {
            println!("computed: all reduced homology trivial in window");
        } else {
            for (d, g) in &nonzero {
                println!("computed: H~_{d} = {g}");
            }
        }
        if let Some(note) = &self.morse_note {
            println!("morse: {note}");
        }
        for note in &self.extra_notes {
            println!("note: {note}");
        }
        if self.passes() {
            println!("PASS: {}", self.name);
            0
        } else {
            println!("FAIL: {}", self.name);
            EXIT_FAIL
        }
    }
}

fn morse_count_note(res: &MorseResult) -> String {
    let counts = res.counts_by_dim();
    if counts.is_empty() {
        return "matching is acyclic with no critical cells".to_string();
    }
    let parts: Vec<String> = counts
        .iter()
        .map(|(d, c)| format!("{c} critical cell(s) in dimension {d}"))
        .collect();
    format!("matching is acyclic with {}", parts.join(", "))
}

fn run_verify(cmd: VerifyCmd) -> Result<u8, Failure> {
    let v = match cmd {
        VerifyCmd::Path { n, d } => {
            check_nd(n, 1, d)?;
            let (_, hom) = full_homology(&Graph::path(n), d - 2)?;
            let res = path_perfect_matching(n, d)?;
            Verification {
                name: format!("path n={n} d={d}"),
                formula: formulas::ht_path(n, d),
                hom,
                morse_note: Some(morse_count_note(&res)),
                extra_notes: vec![],
            }
        }
        VerifyCmd::Cycle { n, d } => {
            check_nd(n, 3, d)?;
            let g = Graph::cycle(n).expect("n >= 3");
            let (_, hom) = full_homology(&g, d - 2)?;
            let morse_note = if n >= d {
                Some(morse_count_note(&cycle_morse_matching(n, d)?))
            } else {
                None
            };
            Verification {
                name: format!("cycle n={n} d={d}"),
                formula: formulas::ht_cycle(n, d).map_err(|e| fail(EXIT_USAGE, e.to_string()))?,
                hom,
                morse_note,
                extra_notes: vec![],
            }
        }
        VerifyCmd::Complete { n, r } => {
            check_r(r)?;
            if n == 0 {
                return Err(fail(EXIT_USAGE, "complete graphs need n >= 1"));
            }
            let (_, hom) = full_homology(&Graph::complete(n), r)?;
            Verification {
                name: format!("complete n={n} r={r}"),
                formula: formulas::ht_complete(n, r),
                hom,
                morse_note: None,
                extra_notes: vec![],
            }
        }
        VerifyCmd::Multipartite { parts, r } => {
            check_r(r)?;
            let formula = formulas::ht_complete_multipartite(&parts, r)
                .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let g = Graph::complete_multipartite(&parts)
                .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let (_, hom) = full_homology(&g, r)?;
            let res = multipartite_matching(&parts, r)?;
            Verification {
                name: format!("multipartite parts={parts:?} r={r}"),
                formula,
                hom,
                morse_note: Some(morse_count_note(&res)),
                extra_notes: vec![],
            }
        }
        VerifyCmd::Whiskered { base, r } => {
            check_r(r)?;
            let g = genspec::parse_compact(&base).map_err(|e| fail(EXIT_USAGE, e))?;
            let (_, hom) = full_homology(&g.whisker_all(), r)?;
            let res = whisker_matching(&g, r)?;
            Verification {
                name: format!("whiskered base={base} r={r}"),
                formula: formulas::ht_whiskered(g.vertex_count(), r),
                hom,
                morse_note: Some(morse_count_note(&res)),
                extra_notes: vec![],
            }
        }
        VerifyCmd::Leafy { base, leaves, r } => {
            check_r(r)?;
            let g = genspec::parse_compact(&base).map_err(|e| fail(EXIT_USAGE, e))?;
            let formula =
                formulas::ht_leafy(&leaves, r).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let leafy = g.attach_leaves(&leaves).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let (_, hom) = full_homology(&leafy, r)?;
            Verification {
                name: format!("leafy base={base} leaves={leaves:?} r={r}"),
                formula,
                hom,
                morse_note: None,
                extra_notes: vec![],
            }
        }
        VerifyCmd::MaryTree { m, h, r } => {
            check_r(r)?;
            check_m(m)?;
            let tree = Graph::perfect_mary_tree(m, h);
            let (_, hom) = full_homology(&tree, r)?;
            let internal = (m.pow(h as u32) - 1) / (m - 1);
            let morse_note = if r >= internal {
                Some(morse_count_note(&tree_matching(m, h, r)?))
            } else {
                let (t, _) = decompose_r(m, r);
                let sub = tree_collapse(m, h, r)?;
                Some(format!(
                    "collapsed onto the {}-face subcomplex avoiding depth {}",
                    sub.face_count(),
                    h - (t + 1)
                ))
            };
            let mut extra_notes = Vec::new();
            if m == 2 {
                extra_notes
                    .push("closed form stated for m >= 3; evaluated outside hypothesis".into());
            }
            Verification {
                name: format!("mary-tree m={m} h={h} r={r}"),
                formula: formulas::ht_mary_tree(m, h, r),
                hom,
                morse_note,
                extra_notes,
            }
        }
    };
    Ok(v.print())
}

fn check_nd(n: usize, n_min: usize, d: usize) -> Result<(), Failure> {
    if n < n_min {
        return Err(fail(EXIT_USAGE, format!("n must be at least {n_min}")));
    }
    if d < 3 {
        return Err(fail(EXIT_USAGE, "d must be at least 3"));
    }
    Ok(())
}

/// `d:Z^p` cell text in the style of the published table.
fn table_entry(hom: &HomologySummary) -> String {
    let nonzero = hom.nonzero();
    if nonzero.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (d, g) in nonzero {
        let mut terms = Vec::new();
        match g.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            p => terms.push(format!("Z^{p}")),
        }
        for t in &g.torsion {
            terms.push(format!("Z_{t}"));
        }
        parts.push(format!("{d}:{}", terms.join("+")));
    }
    parts.join("; ")
}

fn run_table(
    rows: usize,
    cols: usize,
    slow: bool,
    threads: usize,
    format: Format,
    cap: usize,
) -> Result<u8, Failure> {
    if rows == 0 || cols == 0 {
        return Err(fail(EXIT_USAGE, "--rows and --cols must be positive"));
    }
    if !slow && (rows > 5 || cols > 5) {
        return Err(fail(EXIT_USAGE, "the tier past 5 x 5 needs --slow"));
    }
    if rows > 9 || cols > 9 {
        return Err(fail(EXIT_USAGE, "the table is defined up to 9 x 9"));
    }
    let mut kv = Kv::new();
    for n in 1..=rows {
        for r in 1..=cols {
            let g = Graph::grid(2, n);
            let k = independence_complex(&g, r, &EnumerationOptions { max_dim: None, face_cap: cap })?;
            let top = k.dim().max(0);
            let hom = if slow {
                // locate candidate dimensions with the fast mod-2 oracle,
                // then compute the integral groups only on that window
                let b2 = betti_mod2(&k, 0, top)?;
                let nonzero: Vec<isize> = (0..=top).filter(|&d| b2[d as usize] > 0).collect();
                let (lo, hi) = match (nonzero.first(), nonzero.last()) {
                    (Some(&lo), Some(&hi)) => ((lo - 1).max(0), hi),
                    // mod-2 sees nothing; spot-check a thin band around r
                    _ => {
                        let hi = (r as isize + 2).min(top);
                        ((r as isize - 2).clamp(0, hi), hi)
                    }
                };
                reduced_homology_threaded(&k, lo, hi, threads)?
            } else {
                reduced_homology_threaded(&k, 0, top, threads)?
            };
            let entry = table_entry(&hom);
            match format {
                Format::Text => println!("({n},{r}): {entry}"),
                Format::Kv => kv.push(&format!("table.{n}.{r}"), entry),
            }
        }
    }
    if format == Format::Kv {
        print!("{kv}");
    }
    if slow && format == Format::Text {
        println!("# slow tier windows follow the mod-2 oracle; odd torsion off-window would be missed");
    }
    Ok(0)
}

/// Flat key-value rendering with stable insertion order.
struct Kv {
    lines: Vec<(String, String)>,
}

impl Kv {
    fn new() -> Kv {
        Kv { lines: Vec::new() }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    fn push_homology(&mut self, prefix: &str, hom: &HomologySummary) {
        let (lo, hi) = hom.window();
        for d in lo..=hi {
            let g = hom.group(d).expect("inside window");
            self.push(&format!("{prefix}.dim.{d}.rank"), g.rank);
            let torsion: Vec<String> = g.torsion.iter().map(|t| t.to_string()).collect();
            self.push(&format!("{prefix}.dim.{d}.torsion"), torsion.join(","));
        }
    }
}

impl std::fmt::Display for Kv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k} = {v}");
        }
        write!(f, "{out}")
    }
}
