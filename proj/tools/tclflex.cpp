#include "tclflex/cli.hpp"

int main(int argc, char** argv)
{
    return tclflex::main_cli(argc, argv);
}
