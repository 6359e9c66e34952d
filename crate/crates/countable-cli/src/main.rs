use clap::Parser;

use countable_cli::{run, Cli};

/// Exit 0 on success (including --help/--version), 1 when clap rejects the
/// command line, 2 when a handler rejects the data it was given.
fn main() {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(2);
    }
}

/// Rust ignores SIGPIPE by default, turning `countable ... | head` into a
/// broken-pipe panic. Restore the default so the process dies quietly.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}
