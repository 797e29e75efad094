#ifndef QCOMB_IO_HPP
#define QCOMB_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcomb/spectra.hpp"
#include "qcomb/states.hpp"

namespace qcomb {

// Parse failure with the offending file and line number in the message.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

// Spectrum CSV: one metadata header line
//   # state=... geometry=... kappa=... delta0=... eta0=...
// then rows `delta_p,photon_number` at 15 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum);
Spectrum read_spectrum_csv(std::istream& in, const std::string& name = "<stream>");
Spectrum read_spectrum_csv(const std::filesystem::path& path);

// Two-column (q, p) text for custom number distributions and inferred p^.
void write_distribution(std::ostream& out, const NumberDistribution& dist);
NumberDistribution read_distribution(std::istream& in, const std::string& name = "<stream>");
NumberDistribution read_distribution(const std::filesystem::path& path);

// Flat key=value configuration file; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_key_values(
    const std::filesystem::path& path);

// Static SVG plot of one or more spectra over a shared grid, axes in
// units of delta0.
struct PlotCurve {
    std::string label;
    const Spectrum* spectrum = nullptr;
};
void write_spectrum_svg(const std::filesystem::path& path, std::span<const PlotCurve> curves,
                        const std::string& title);

std::string format_double(double value);  // %.15g, the declared CSV precision

}  // namespace qcomb

#endif
