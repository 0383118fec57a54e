#include "entkit/cli_app.hpp"

int main(int argc, char** argv) { return entkit::run_cli(argc, argv); }
