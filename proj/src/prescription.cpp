#include "t2dex/prescription.hpp"

#include <string>

namespace t2dex {

namespace {
constexpr double kMinutesPerDay = 1440.0;
}

void validate(const ExerciseProgram& program)
{
    if (!(program.u_bar > 0.0 && program.u_bar <= 100.0)) {
        throw ValidationError("ExerciseProgram.u_bar must lie in (0, 100]");
    }
    if (!(program.T > 0.0)) {
        throw ValidationError("ExerciseProgram.T must be strictly positive");
    }
    if (!(program.delta >= 0.0)) {
        throw ValidationError("ExerciseProgram.delta must be non-negative");
    }
    if (program.delta > program.T * kMinutesPerDay) {
        throw ValidationError("ExerciseProgram.delta exceeds the period");
    }
}

WeeklyDose weekly_dose(const ExerciseProgram& program)
{
    validate(program);
    return {program.delta * 7.0 / program.T};
}

PrescriptionMapper::PrescriptionMapper(double calibration)
    : calibration_(calibration)
{
    if (!(calibration > 0.0)) {
        throw ValidationError("PrescriptionMapper: calibration must be strictly positive");
    }
}

double PrescriptionMapper::equivalent_input(const ExerciseProgram& program) const
{
    validate(program);
    const double delta_days = program.delta / (kMinutesPerDay * calibration_);
    return program.u_bar * delta_days / program.T;
}

double PrescriptionMapper::session_minutes(double u_eq, double u_bar, double T_days) const
{
    if (!(u_bar > 0.0)) {
        throw ValidationError("session_minutes: u_bar must be strictly positive");
    }
    if (!(T_days > 0.0)) {
        throw ValidationError("session_minutes: T must be strictly positive");
    }
    if (!(u_eq >= 0.0)) {
        throw ValidationError("session_minutes: u_eq must be non-negative");
    }
    const double minutes = u_eq * T_days / u_bar * kMinutesPerDay * calibration_;
    const double period_minutes = T_days * kMinutesPerDay;
    if (minutes > period_minutes) {
        throw InfeasibleDuration(
            "session duration exceeds the period at this intensity", minutes, period_minutes);
    }
    return minutes;
}

} // namespace t2dex
