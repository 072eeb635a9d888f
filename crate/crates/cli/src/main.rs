fn main() {
    let caps = std::env::var(raag_cli::CAPS_ENV).ok();
    let code = raag_cli::run(std::env::args_os(), caps.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
