#include "nehari/ground_state.hpp"

#include <cmath>

namespace nehari {

std::string escape_name(EscapeKind k)
{
    switch (k) {
        case EscapeKind::localized: return "localized";
        case EscapeKind::escaping: return "escaping";
        case EscapeKind::inconclusive: return "inconclusive";
    }
    throw std::logic_error("unknown escape kind");
}

EscapeDiagnosis detect_escape(std::span<const BoxLevel> levels, double m_inf_ref, double delta)
{
    EscapeDiagnosis d;
    if (levels.size() < 2) {
        d.kind = EscapeKind::inconclusive;
        d.note = "needs at least two box sizes";
        d.extrapolated_m = levels.empty() ? 0.0 : levels.back().m;
        return d;
    }
    const BoxLevel& last = levels.back();
    const BoxLevel& prev = levels[levels.size() - 2];

    // geometric extrapolation of the level trend when three sizes exist
    double m_ext = last.m;
    if (levels.size() >= 3) {
        const double g1 = last.m - prev.m;
        const double g0 = levels[levels.size() - 3].m;
        const double g_prev = prev.m - g0;
        if (g_prev != 0.0) {
            const double ratio = g1 / g_prev;
            if (ratio > 0.0 && ratio < 1.0) m_ext = last.m + g1 * ratio / (1.0 - ratio);
        }
    }
    d.extrapolated_m = m_ext;

    const double gap_last = std::abs(last.m - m_inf_ref);
    const double gap_prev = std::abs(prev.m - m_inf_ref);
    const bool shell_heavy = last.boundary_mass > 0.1;
    const bool approaching = gap_last <= delta && gap_last <= 0.9 * gap_prev;

    if (shell_heavy || approaching) {
        d.kind = EscapeKind::escaping;
        d.note = shell_heavy ? "outer shell carries the mass" : "level approaches the limit level";
        return d;
    }
    const bool stable = std::abs(last.m - prev.m) <= 1e-3 * std::abs(m_inf_ref);
    if (last.boundary_mass < 1e-3 && stable) {
        d.kind = EscapeKind::localized;
        d.note = "level stable and mass interior";
        return d;
    }
    d.kind = EscapeKind::inconclusive;
    d.note = "mixed signals across the box ladder";
    return d;
}

} // namespace nehari
