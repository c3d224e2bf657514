fn main() {
    std::process::exit(qcalab_cli::run(std::env::args_os()));
}
