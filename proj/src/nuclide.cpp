#include "nucent/nuclide.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "nucent/error.hpp"

namespace nucent {

std::string Shell::label() const
{
    static constexpr char letters[] = "spdfg";
    return std::to_string(n) + letters[l];
}

Nuclide::Nuclide(std::string name, int mass_number, std::vector<ShellOccupation> occupations)
    : name_(std::move(name)), mass_number_(mass_number)
{
    if (mass_number_ <= 0 || mass_number_ % 2 != 0) {
        throw InvalidInput("nuclide " + name_ + ": mass number must be even and positive for N=Z");
    }
    double count = 0.0;
    for (const auto& occ : occupations) {
        if (!(occ.eta >= 0.0 && occ.eta <= 1.0)) {
            throw InvalidInput("nuclide " + name_ + ": occupation of " + occ.shell.label()
                               + " outside [0,1]");
        }
        if (std::find(supported_shells.begin(), supported_shells.end(), occ.shell)
            == supported_shells.end()) {
            throw InvalidInput("nuclide " + name_ + ": unsupported shell " + occ.shell.label());
        }
        auto dup = std::count_if(occupations.begin(), occupations.end(),
                                 [&](const ShellOccupation& o) { return o.shell == occ.shell; });
        if (dup > 1) {
            throw InvalidInput("nuclide " + name_ + ": shell " + occ.shell.label() + " listed twice");
        }
        count += occ.shell.capacity() * occ.eta;
        if (occ.eta > 0.0) {
            occupations_.push_back(occ);
        }
    }
    if (std::abs(count - mass_number_) > 1e-9 * mass_number_) {
        std::ostringstream msg;
        msg << "nuclide " << name_ << ": occupations hold " << count << " nucleons, A = " << mass_number_;
        throw InvalidInput(msg.str());
    }
    std::sort(occupations_.begin(), occupations_.end(), [](const auto& a, const auto& b) {
        return std::pair(a.shell.n, a.shell.l) < std::pair(b.shell.n, b.shell.l);
    });
}

double Nuclide::eta(Shell shell) const
{
    for (const auto& occ : occupations_) {
        if (occ.shell == shell) {
            return occ.eta;
        }
    }
    return 0.0;
}

int Nuclide::max_l() const
{
    int l = 0;
    for (const auto& occ : occupations_) {
        l = std::max(l, occ.shell.l);
    }
    return l;
}

namespace {

Nuclide fill_shells(std::string name, int A, std::initializer_list<Shell> order)
{
    std::vector<ShellOccupation> occ;
    int remaining = A;
    for (Shell s : order) {
        int placed = std::min(remaining, s.capacity());
        occ.push_back({s, static_cast<double>(placed) / s.capacity()});
        remaining -= placed;
    }
    return Nuclide(std::move(name), A, std::move(occ));
}

}  // namespace

Nuclide builtin_nuclide(std::string_view name)
{
    struct Entry {
        std::string_view name;
        int A;
    };
    static constexpr Entry one_d[] = {{"He4", 4},   {"C12", 12},  {"O16", 16}, {"Mg24", 24},
                                      {"Si28", 28}, {"S32", 32},  {"Ar36", 36}};
    for (const auto& e : one_d) {
        if (e.name == name) {
            return fill_shells(std::string(name), e.A, {shell_1s, shell_1p, shell_1d});
        }
    }
    if (name == "Ca40") {
        return fill_shells("Ca40", 40, {shell_1s, shell_1p, shell_1d, shell_2s});
    }
    if (name == "Ar36-2s") {
        // 1d-2s variant: 2s full, 16 nucleons in 1d
        return Nuclide("Ar36-2s", 36,
                       {{shell_1s, 1.0}, {shell_1p, 1.0}, {shell_1d, 0.8}, {shell_2s, 1.0}});
    }
    throw InvalidInput("unknown nuclide '" + std::string(name) + "'");
}

const std::vector<std::string>& builtin_nuclide_names()
{
    static const std::vector<std::string> names{"He4",  "C12", "O16",     "Mg24", "Si28",
                                                "S32",  "Ar36", "Ar36-2s", "Ca40"};
    return names;
}

const std::vector<std::string>& table_nuclide_names()
{
    static const std::vector<std::string> names{"He4",  "C12", "O16",  "Mg24",
                                                "Si28", "S32", "Ar36", "Ca40"};
    return names;
}

double r1_moment(const Nuclide& nuclide)
{
    double sum = 0.0;
    for (const auto& occ : nuclide.occupations()) {
        sum += occ.shell.capacity() * occ.shell.r2_coefficient() * occ.eta;
    }
    return sum / nuclide.A();
}

std::vector<Nuclide> read_nuclide_table(std::istream& in)
{
    std::vector<Nuclide> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream row(line);
        std::string name;
        int A = 0;
        int Z = 0;
        double e1s = 0, e1p = 0, e1d = 0, e2s = 0;
        if (!(row >> name >> A >> Z >> e1s >> e1p >> e1d >> e2s)) {
            throw InvalidInput("nuclide table line " + std::to_string(lineno)
                               + ": expected 'name A Z eta_1s eta_1p eta_1d eta_2s'");
        }
        if (2 * Z != A) {
            throw InvalidInput("nuclide table line " + std::to_string(lineno) + ": only N=Z nuclei");
        }
        out.emplace_back(name, A,
                         std::vector<ShellOccupation>{
                             {shell_1s, e1s}, {shell_1p, e1p}, {shell_1d, e1d}, {shell_2s, e2s}});
    }
    return out;
}

Nuclide find_nuclide(std::string_view name, const std::vector<Nuclide>& extra)
{
    const auto& names = builtin_nuclide_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) {
        return builtin_nuclide(name);
    }
    for (const auto& n : extra) {
        if (n.name() == name) {
            return n;
        }
    }
    throw InvalidInput("unknown nuclide '" + std::string(name) + "'");
}

}  // namespace nucent
