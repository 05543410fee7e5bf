fn main() {
    std::process::exit(blocktoep_cli::run(std::env::args_os()));
}
