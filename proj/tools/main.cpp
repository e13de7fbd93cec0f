#include "kcontour/app.hpp"
#include "kcontour/errors.hpp"

#include <exception>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const kcontour::RunConfig cfg = kcontour::parse_args(args);
        return kcontour::run(cfg, std::cout);
    } catch (const kcontour::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run 'kcontour --help' for usage\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
