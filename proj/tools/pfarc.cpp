#include "pfarc/cli.hpp"

int main(int argc, char** argv) { return pfarc::run(argc, argv); }
