use clap::Parser;

use qroute_cli::RunConfig;

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(err) => {
            // --help and --version land here; they are not failures.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    std::process::exit(qroute_cli::run(config));
}
