fn main() {
    std::process::exit(pulsecorr_tools::main_with_args(std::env::args_os()));
}
