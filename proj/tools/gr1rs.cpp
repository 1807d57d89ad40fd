#include "gr1rs/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return gr1rs::run_cli(argc, argv, std::cout, std::cerr);
}
