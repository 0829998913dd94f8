#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nucent {

/// Harmonic-oscillator shell (n, l) with N=Z spin-isospin saturation.
struct Shell {
    int n;
    int l;

    /// Nucleon count of the filled shell, 4(2l+1).
    constexpr int capacity() const { return 4 * (2 * l + 1); }

    /// Single-particle <r^2>/b0^2 of the HO orbital, 2n + l - 1/2.
    constexpr double r2_coefficient() const { return 2.0 * n + l - 0.5; }

    std::string label() const;

    friend constexpr bool operator==(const Shell&, const Shell&) = default;
};

inline constexpr Shell shell_1s{1, 0};
inline constexpr Shell shell_1p{1, 1};
inline constexpr Shell shell_1d{1, 2};
inline constexpr Shell shell_2s{2, 0};

/// The shells this code supports, in filling order.
inline constexpr std::array<Shell, 4> supported_shells{shell_1s, shell_1p, shell_1d, shell_2s};

struct ShellOccupation {
    Shell shell;
    double eta;  // fraction of the shell capacity that is filled
};

/// An N=Z nucleus described by its HO shell occupation probabilities.
class Nuclide {
public:
    /// Throws InvalidInput unless the sum rule sum(capacity * eta) == A holds,
    /// every eta lies in [0, 1] and A is even.
    Nuclide(std::string name, int mass_number, std::vector<ShellOccupation> occupations);

    const std::string& name() const { return name_; }
    int A() const { return mass_number_; }
    int Z() const { return mass_number_ / 2; }

    /// Occupied shells only (eta > 0).
    const std::vector<ShellOccupation>& occupations() const { return occupations_; }

    /// Occupation probability of a shell; zero when absent.
    double eta(Shell shell) const;

    /// Largest orbital angular momentum among occupied shells.
    int max_l() const;

private:
    std::string name_;
    int mass_number_;
    std::vector<ShellOccupation> occupations_;
};

/// Builtin nuclides: He4, C12, O16, Mg24, Si28, S32, Ar36, Ar36-2s, Ca40.
/// Shells are filled in the order 1s, 1p, 1d (2s for Ca40); the last open
/// shell carries the partial occupancy.
Nuclide builtin_nuclide(std::string_view name);

/// Labels accepted by builtin_nuclide.
const std::vector<std::string>& builtin_nuclide_names();

/// The eight nuclei treated in the reference tables (Ar36 as a 1d nucleus).
const std::vector<std::string>& table_nuclide_names();

/// Dimensionless one-body mean-square radius coefficient
/// R1 = (1/A)(6 eta_1s + 14 eta_2s + 30 eta_1p + 70 eta_1d).
double r1_moment(const Nuclide& nuclide);

/// Reads nuclide definitions from a whitespace-separated table with columns
/// `name A Z eta_1s eta_1p eta_1d eta_2s`. Blank lines and lines starting
/// with '#' are ignored.
std::vector<Nuclide> read_nuclide_table(std::istream& in);

/// Resolves a label against the builtin set first, then `extra`.
Nuclide find_nuclide(std::string_view name, const std::vector<Nuclide>& extra = {});

}  // namespace nucent
