use clap::Parser;
use ol_tools::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    // Proof trees are walked recursively; give deep proofs room.
    let worker = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || {
            let stdout = std::io::stdout();
            let stderr = std::io::stderr();
            run(cli, &mut stdout.lock(), &mut stderr.lock())
        })
        .expect("spawn worker thread");
    let code = worker.join().unwrap_or(2);
    std::process::exit(code);
}
