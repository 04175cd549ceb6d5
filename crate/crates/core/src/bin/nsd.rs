fn main() {
    env_logger::init();
    std::process::exit(nsd_decomp::cli::run(std::env::args_os()));
}
