#include "rqp/cli.h"

int main(int argc, char** argv) { return rqp::cli::run(argc, argv); }
