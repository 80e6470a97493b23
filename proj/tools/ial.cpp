#include "ial/cli.hpp"

int main(int argc, char** argv)
{
    return ial::run_cli(argc, argv);
}
