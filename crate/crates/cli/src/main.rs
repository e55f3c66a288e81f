fn main() {
    std::process::exit(modgeo_cli::run(std::env::args_os()));
}
