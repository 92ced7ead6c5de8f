#pragma once

#include "t2dex/errors.hpp"

namespace t2dex {

/// A regular exercise program: fixed intensity and period, varying duration.
struct ExerciseProgram {
    double u_bar; ///< intensity as percent-number (50 means 50%)
    double T;     ///< period between session starts [days]
    double delta; ///< session duration [minutes]
};

struct WeeklyDose {
    double minutes_per_week;
};

/// WHO-guideline minimum of moderate exercise, used as a report marker.
constexpr double kWhoMinimumWeeklyMinutes = 150.0;

void validate(const ExerciseProgram& program);

/// Total exercise minutes per week: delta * 7 / T.
WeeklyDose weekly_dose(const ExerciseProgram& program);

/// Converts between the controller's equivalent input u_eq and displayed
/// session durations.
///
/// Unit convention: inside u_eq = u_bar*delta/T the duration and period share
/// one time unit (days); the displayed duration in minutes is scaled by a
/// single calibration constant chosen so that u_eq = 3 at u_bar = 60%,
/// T = 2 d maps to roughly 400 min/week. The constant ships in the parameter
/// file, never hard-coded.
class PrescriptionMapper {
public:
    explicit PrescriptionMapper(double calibration);

    double calibration() const { return calibration_; }

    /// u_eq = u_bar * delta / T with delta converted back to days.
    double equivalent_input(const ExerciseProgram& program) const;

    /// Inverse map delta = u_eq * T / u_bar, displayed in minutes.
    /// Throws InfeasibleDuration (carrying the clamped feasible value) if the
    /// session would exceed its period.
    double session_minutes(double u_eq, double u_bar, double T_days) const;

private:
    double calibration_;
};

} // namespace t2dex
