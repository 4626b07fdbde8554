use clap::error::ErrorKind;
use clap::Parser;
use sl2free_cli::cli::{run, Cli};
use sl2free_cli::CheckFailed;
use std::process::exit;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let kind = e.kind();
            let _ = e.print();
            exit(match kind {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            });
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        exit(if err.downcast_ref::<CheckFailed>().is_some() {
            2
        } else {
            1
        });
    }
}
