#pragma once

namespace tessim {

inline constexpr double kStefanBoltzmann = 5.670374419e-8;  // W/(m^2 K^4)
inline constexpr double kWaterMolarMass = 18.015;           // g/mol
inline constexpr double kWaterSpecificHeat = 4.18;          // J/(g K), liquid
inline constexpr double kCelsiusOffset = 273.15;

// 1 kJ/g = 1000 J/g; 1 Wh = 3600 J, so kJ/g -> Wh/kg multiplies by 1000/3.6.
inline constexpr double kKJPerGramToWhPerKg = 1000.0 / 3.6;

constexpr double celsius_to_kelvin(double c) { return c + kCelsiusOffset; }
constexpr double kelvin_to_celsius(double k) { return k - kCelsiusOffset; }

}  // namespace tessim
