#pragma once

namespace tes {

// Selects between the OpenMP kernel and the serial reference it is tested against.
enum class Exec { serial, parallel };

}  // namespace tes
