#include "qsearch_cli/app.hpp"

int main(int argc, char** argv) { return qsearch::cli::run_main(argc, argv); }
