#include <iostream>
#include <string>
#include <vector>

#include "ttm/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const ttm::CommandResult result = ttm::run_command(args);
    std::cout << (result.json_output ? result.report.render_json() : result.report.render_text());
    return result.exit_code;
}
