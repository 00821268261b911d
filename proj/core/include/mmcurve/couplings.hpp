#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <mmcurve/series.hpp>

namespace mmcurve {

// Normalisations of the couplings: g_n = t_{n-1}/(n-1)! = n T_n.
enum class FrameTag { g, t, T };

std::string_view frame_prefix(FrameTag tag);

class CouplingFrame {
public:
    CouplingFrame(FrameTag tag, VarTablePtr table, std::map<int, PSeries> values);

    // Symbolic entries become coupling variables named <prefix><index>; numeric ones constants.
    // `extra` variables are appended to the table.
    static CouplingFrame make(FrameTag tag, const std::vector<std::pair<int, std::optional<Rational>>>& entries,
                              const std::vector<Variable>& extra = {});
    static CouplingFrame symbolic(FrameTag tag, const std::vector<int>& indices,
                                  const std::vector<Variable>& extra = {});
    // Comma list of gK (symbolic), gK=sym, or gK=p/q (numeric); the g-frame.
    static CouplingFrame parse(std::string_view text, const std::vector<Variable>& extra = {});

    FrameTag tag() const { return tag_; }
    const VarTablePtr& table() const { return table_; }
    const std::map<int, PSeries>& values() const { return values_; }
    std::vector<int> active() const;

    // Frame-independent accessors; zero when inactive.
    PSeries g(int n) const;
    PSeries t(int n) const;
    PSeries T(int n) const;
    // (g_n - delta_{n,2}) / n
    PSeries T_tilde(int n) const;
    // Largest n with g_n != 0, or 0 when every coupling vanishes.
    int max_g_index() const;
    bool has_numeric() const;
    bool is_symbolic(int index) const;

    CouplingFrame convert(FrameTag to) const;
    CouplingFrame rebase(const VarTablePtr& table) const;
    CouplingFrame with_extra(const std::vector<Variable>& extra) const;

private:
    PSeries value(int index) const;

    FrameTag tag_;
    VarTablePtr table_;
    std::map<int, PSeries> values_;
};

// Renormalised couplings I_0 and I_k.
struct RenormalizedCouplings {
    PSeries I0;
    std::map<int, PSeries> Ik;
    int computed_to = 0;
};

// Fixed point of I = sum_n t_n I^n / n! through total coupling degree `degree`.
PSeries compute_I0(const CouplingFrame& frame, int degree);
// The same object through the closed composition sum; needs every coupling symbolic.
PSeries compute_I0_composition(const CouplingFrame& frame, int degree);
// I_k = sum_n t_{n+k} I_0^n / n!; k = 0 returns I_0.
PSeries compute_Ik(const CouplingFrame& frame, int k, int degree);
PSeries compute_Ik_from_I0(const CouplingFrame& frame, int k, const PSeries& I0);
RenormalizedCouplings renormalize(const CouplingFrame& frame, int degree, int max_k);

} // namespace mmcurve
