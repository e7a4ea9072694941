fn main() {
    gwsample_cli::init_logging();
    let stdout = std::io::stdout();
    let code = gwsample_cli::run(std::env::args_os(), &mut stdout.lock());
    std::process::exit(code);
}
