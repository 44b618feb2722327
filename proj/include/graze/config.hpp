#ifndef GRAZE_CONFIG_HPP
#define GRAZE_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graze/cross_sections.hpp"
#include "graze/fpl_modes.hpp"

namespace graze {

// Plain key=value configuration ('#' comments, blank lines ignored).
struct KeyValues {
    std::map<std::string, std::string> kv;

    static KeyValues parse_text(const std::string& text);
    static KeyValues parse_file(const std::string& path);

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string get(const std::string& k, const std::string& def) const;
    double get_double(const std::string& k, double def) const;
    int get_int(const std::string& k, int def) const;
    std::uint64_t get_u64(const std::string& k, std::uint64_t def) const;
    std::vector<double> get_list(const std::string& k) const; // comma-separated
    void set(const std::string& k, const std::string& v) { kv[k] = v; }

    // canonical "k=v\n" text, keys sorted; feeds the config hash
    std::string canonical_text() const;
};

std::uint64_t config_hash(const KeyValues& kv);
std::string version_string();

// kernel specification from config keys:
//   kind = cutoff | vhs | power | log_cutoff | rescaled | fpl
//   gamma, nu, s, epsilon, lambda0, c_alpha
struct KernelSpec {
    std::string kind = "cutoff";
    double gamma = 0.0;
    double nu = 0.5;
    std::optional<double> s;
    double epsilon = 0.1;
    std::optional<double> lambda0;
    double c_alpha = 1.0;

    static KernelSpec from_config(const KeyValues& kv);
    bool is_family() const { return kind == "log_cutoff" || kind == "rescaled"; }
    bool is_fpl() const { return kind == "fpl"; }
    CrossSection cross_section() const;
    GrazingFamily family() const;
    FplKernel fpl() const;
    std::string describe() const;
};

// RFC-4180-style CSV writer: fields quoted when they contain comma/quote/CR/LF.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header_comments,
              const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& fields);
    static std::string num(double v);
    static std::string quote(const std::string& field);

private:
    std::ofstream out_;
    std::size_t ncols_;
};

} // namespace graze

#endif
