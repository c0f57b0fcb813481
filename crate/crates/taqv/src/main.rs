//! Thin file-based front door over the library: verify a Hoare triple,
//! run a circuit over a state-set automaton, generate benchmark jobs, or
//! hunt for behavioral differences between two circuits.
//!
//! Exit codes: 0 the check holds (or the command has no check), 1 a
//! violation or behavioral difference was found, 2 usage or parse error,
//! 3 internal error.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use taqv::driver::bughunt::{bughunt, BugHuntReport};
use taqv::driver::generate::{
    generate_bv, generate_grover_all, generate_grover_single, generate_mctoffoli,
    generate_random_circuit, inject_bug, DominanceShape, GeneratedJob,
};
use taqv::driver::{run_circuit, verify, CheckKind, VerifyReport};
use taqv::frontend::{qasm, ta_text, verdict};
use taqv::gates::ApplyMode;
use taqv::{QuantumCircuit, TreeAutomaton};

#[derive(Parser)]
#[command(name = "taqv", version, about = "Set-based quantum circuit verification with tree automata")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide {pre} circuit {post} and print the verdict.
    Verify(VerifyArgs),
    /// Apply a circuit to a state-set automaton and write the result.
    Run(RunArgs),
    /// Write a benchmark job (pre / circuit / expected output) to a directory.
    Gen(GenArgs),
    /// Search for an input set on which two circuits disagree.
    Bughunt(BughuntArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Precondition automaton file.
    #[arg(long, value_name = "FILE")]
    pre: PathBuf,
    /// Circuit file (OpenQASM 2 subset).
    #[arg(long, value_name = "FILE")]
    circuit: PathBuf,
    /// Postcondition automaton file.
    #[arg(long, value_name = "FILE")]
    post: PathBuf,
    /// eq: output language must equal post; incl: must be contained in it.
    #[arg(long, value_enum, default_value_t = CheckArg::Eq)]
    check: CheckArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Hybrid)]
    mode: ModeArg,
    /// Print the verdict as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Precondition automaton file.
    #[arg(long, value_name = "FILE")]
    pre: PathBuf,
    /// Circuit file (OpenQASM 2 subset).
    #[arg(long, value_name = "FILE")]
    circuit: PathBuf,
    /// Where to write the resulting automaton.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Hybrid)]
    mode: ModeArg,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Hidden-string search: writes pre.ta, circuit.qasm, post.ta.
    Bv {
        /// The hidden bit string, e.g. 1011 (first qubit leftmost).
        #[arg(long)]
        hidden: String,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
    /// Amplitude amplification toward one secret value: writes pre.ta,
    /// circuit.qasm, post_shape.json.
    GroverSingle {
        /// Number of data qubits (register width is 2m).
        #[arg(long)]
        m: u32,
        /// Number of amplification rounds.
        #[arg(long, default_value_t = 1)]
        iters: u32,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
    /// Amplitude amplification for every target at once: writes pre.ta,
    /// circuit.qasm, post_shape.json.
    GroverAll {
        /// Number of data qubits (register width is 3m).
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        iters: u32,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
    /// Multi-controlled Toffoli over a free-wire state set: writes pre.ta,
    /// circuit.qasm, post.ta.
    Mctoffoli {
        /// Number of control qubits, at least 3 (register width is 2m).
        #[arg(long)]
        m: u32,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
    /// Seeded random circuit (3n gates): writes circuit.qasm and, with
    /// --with-bug, a variant with one extra random gate as buggy.qasm.
    Random {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write buggy.qasm, derived with this seed.
        #[arg(long, value_name = "SEED")]
        with_bug: Option<u64>,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct BughuntArgs {
    /// First circuit file.
    #[arg(long, value_name = "FILE")]
    circuit_a: PathBuf,
    /// Second circuit file; must have the same register width.
    #[arg(long, value_name = "FILE")]
    circuit_b: PathBuf,
    #[arg(long, default_value_t = 50)]
    max_iters: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Hybrid)]
    mode: ModeArg,
    /// Print the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Eq,
    Incl,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Hybrid,
    Composition,
}

impl From<ModeArg> for ApplyMode {
    fn from(m: ModeArg) -> ApplyMode {
        match m {
            ModeArg::Hybrid => ApplyMode::Hybrid,
            ModeArg::Composition => ApplyMode::Composition,
        }
    }
}

/// Failure carrying the process exit code: 2 for bad input, 3 for
/// everything that went wrong past parsing.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(msg: impl Display) -> Failure {
        Failure { code: 2, message: msg.to_string() }
    }

    fn internal(msg: impl Display) -> Failure {
        Failure { code: 3, message: msg.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Run(a) => cmd_run(a),
        Cmd::Gen(a) => cmd_gen(a.family),
        Cmd::Bughunt(a) => cmd_bughunt(a),
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_automaton(path: &Path) -> Result<TreeAutomaton, Failure> {
    let src = read_to_string(path)?;
    ta_text::parse_automaton(&src)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<QuantumCircuit, Failure> {
    let src = read_to_string(path)?;
    qasm::parse_circuit(&src).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))
}

fn stats_doc(report: &VerifyReport, gate_count: usize) -> verdict::StatsDoc {
    let stats = &report.stats;
    verdict::StatsDoc {
        gate_count,
        per_gate: stats
            .per_gate
            .iter()
            .map(|g| verdict::GateStatDoc {
                gate: format!("{:?}", g.gate),
                states: g.states,
                transitions: g.transitions,
            })
            .collect(),
        peak_states: stats.peak_states(),
        peak_transitions: stats.peak_transitions(),
        wall_ms: stats.wall.as_millis() as u64,
        seed: None,
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let pre = load_automaton(&a.pre)?;
    let circuit = load_circuit(&a.circuit)?;
    let post = load_automaton(&a.post)?;
    let check = match a.check {
        CheckArg::Eq => CheckKind::Equivalence,
        CheckArg::Incl => CheckKind::Inclusion,
    };
    let report = verify(&pre, &circuit, &post, check, a.mode.into())
        .map_err(|e| Failure::internal(e))?;
    let outcome = match (report.holds, a.check) {
        (true, CheckArg::Eq) => "equal",
        (true, CheckArg::Incl) => "included",
        (false, _) => "violation",
    };
    let witness = report
        .witness
        .as_ref()
        .map(|(tree, side)| verdict::witness_doc(tree, verdict::side_str(*side)));
    if a.json {
        let doc = verdict::verdict_doc(outcome, witness, stats_doc(&report, circuit.len()));
        print!("{}", verdict::to_json(&doc));
    } else {
        println!("verdict: {outcome}");
        if let Some((tree, side)) = &report.witness {
            println!("witness ({}): {}", verdict::side_str(*side), tree.dirac());
        }
        println!(
            "gates: {}  peak states: {}  peak transitions: {}  wall: {:?}",
            circuit.len(),
            report.stats.peak_states(),
            report.stats.peak_transitions(),
            report.stats.wall,
        );
    }
    Ok(if report.holds { 0 } else { 1 })
}

fn cmd_run(a: RunArgs) -> Result<u8, Failure> {
    let pre = load_automaton(&a.pre)?;
    let circuit = load_circuit(&a.circuit)?;
    let (result, stats) =
        run_circuit(&pre, &circuit, a.mode.into()).map_err(|e| Failure::internal(e))?;
    let text = ta_text::serialize_automaton(&result).map_err(|e| Failure::internal(e))?;
    write_file(&a.out, &text)?;
    println!(
        "wrote {}  states: {}  transitions: {}  wall: {:?}",
        a.out.display(),
        result.num_states(),
        result.num_transitions(),
        stats.wall,
    );
    Ok(0)
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::internal(format!("cannot create {}: {e}", dir.display())))
}

fn write_job(dir: &Path, job: &GeneratedJob) -> Result<(), Failure> {
    write_pre_circuit(dir, &job.pre, &job.circuit)?;
    let post = ta_text::serialize_automaton(&job.post).map_err(|e| Failure::internal(e))?;
    write_file(&dir.join("post.ta"), &post)
}

fn write_pre_circuit(
    dir: &Path,
    pre: &TreeAutomaton,
    circuit: &QuantumCircuit,
) -> Result<(), Failure> {
    ensure_dir(dir)?;
    let pre_text = ta_text::serialize_automaton(pre).map_err(|e| Failure::internal(e))?;
    write_file(&dir.join("pre.ta"), &pre_text)?;
    write_file(&dir.join("circuit.qasm"), &qasm::serialize_circuit(circuit))
}

fn write_shape_job(
    dir: &Path,
    pre: &TreeAutomaton,
    circuit: &QuantumCircuit,
    shape: &DominanceShape,
) -> Result<(), Failure> {
    write_pre_circuit(dir, pre, circuit)?;
    let mut json = serde_json::to_string_pretty(shape)
        .map_err(|e| Failure::internal(format!("shape serialization: {e}")))?;
    json.push('\n');
    write_file(&dir.join("post_shape.json"), &json)
}

fn parse_bits(s: &str) -> Result<Vec<bool>, Failure> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Failure::usage(format!("--hidden must be a 0/1 string, got `{s}`"))),
        })
        .collect()
}

fn cmd_gen(family: GenFamily) -> Result<u8, Failure> {
    match family {
        GenFamily::Bv { hidden, out_dir } => {
            let bits = parse_bits(&hidden)?;
            if bits.is_empty() {
                return Err(Failure::usage("--hidden must be nonempty"));
            }
            write_job(&out_dir, &generate_bv(&bits))?;
            println!("wrote bv job ({} qubits) to {}", bits.len() + 1, out_dir.display());
        }
        GenFamily::GroverSingle { m, iters, out_dir } => {
            if m < 1 {
                return Err(Failure::usage("--m must be at least 1"));
            }
            let (pre, circuit, shape) = generate_grover_single(m, iters);
            write_shape_job(&out_dir, &pre, &circuit, &shape)?;
            println!("wrote grover-single job ({} qubits) to {}", 2 * m, out_dir.display());
        }
        GenFamily::GroverAll { m, iters, out_dir } => {
            if m < 1 {
                return Err(Failure::usage("--m must be at least 1"));
            }
            let (pre, circuit, shape) = generate_grover_all(m, iters);
            write_shape_job(&out_dir, &pre, &circuit, &shape)?;
            println!("wrote grover-all job ({} qubits) to {}", 3 * m, out_dir.display());
        }
        GenFamily::Mctoffoli { m, out_dir } => {
            if m < 3 {
                return Err(Failure::usage("--m must be at least 3"));
            }
            write_job(&out_dir, &generate_mctoffoli(m))?;
            println!("wrote mctoffoli job ({} qubits) to {}", 2 * m, out_dir.display());
        }
        GenFamily::Random { n, seed, with_bug, out_dir } => {
            if n < 1 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            ensure_dir(&out_dir)?;
            let c = generate_random_circuit(n, seed);
            write_file(&out_dir.join("circuit.qasm"), &qasm::serialize_circuit(&c))?;
            if let Some(bug_seed) = with_bug {
                let buggy = inject_bug(&c, bug_seed);
                write_file(&out_dir.join("buggy.qasm"), &qasm::serialize_circuit(&buggy))?;
            }
            println!("wrote random circuit ({n} qubits, {} gates) to {}", c.len(), out_dir.display());
        }
    }
    Ok(0)
}

fn bughunt_doc(r: &BugHuntReport) -> verdict::BugHuntDoc {
    verdict::BugHuntDoc {
        schema: verdict::SCHEMA,
        outcome: if r.found() { "violation" } else { "no-violation" }.to_string(),
        violation: r.violation.as_ref().map(|v| verdict::BugHuntViolationDoc {
            iteration: v.iteration,
            witness: verdict::witness_doc(&v.witness, verdict::side_str(v.side)),
            confirmed: v.confirmed,
        }),
        iterations_run: r.iterations_run,
        budget_hit: r.budget_hit,
        wall_ms: r.wall.as_millis() as u64,
        seed: r.seed,
    }
}

fn cmd_bughunt(a: BughuntArgs) -> Result<u8, Failure> {
    let ca = load_circuit(&a.circuit_a)?;
    let cb = load_circuit(&a.circuit_b)?;
    let report = bughunt(&ca, &cb, a.max_iters, a.seed, a.mode.into())
        .map_err(|e| Failure::internal(e))?;
    if a.json {
        print!("{}", verdict::to_json(&bughunt_doc(&report)));
    } else if let Some(v) = &report.violation {
        let confirm = match v.confirmed {
            Some(true) => " (confirmed by matrix simulation)",
            Some(false) => " (NOT confirmed by matrix simulation)",
            None => " (register too wide for matrix confirmation)",
        };
        println!("difference at round {}{}", v.iteration, confirm);
        println!("witness ({}): {}", verdict::side_str(v.side), v.witness.dirac());
    } else {
        let why = if report.budget_hit { " (stopped on size budget)" } else { "" };
        println!(
            "no difference found after {} rounds{} in {:?}",
            report.iterations_run, why, report.wall,
        );
    }
    Ok(if report.found() { 1 } else { 0 })
}
