// SPDX-License-Identifier: Apache-2.0
#include "belldisc/cli.hpp"

int main(int argc, char** argv) { return belldisc::run_cli(argc, argv); }
