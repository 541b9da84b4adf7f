#pragma once

// Frozen regression fixtures for the detection-function tables of the
// quartic system at a = 1/3, b = 1/2. The tabulated coefficients correspond
// to a degree-10 run (radial power 6, angular powers cos^10/sin^10); the
// degree-12 curves reproduce the reference band breakpoints instead. Values
// for families 1, 3, 4 are scaled by 1e-4 (the rho/omega convention).

namespace refdata {

struct Row {
    double h, cu, cv;
};

// family 2, unscaled coefficients, full 20-row grid 0.01(0.1)1.91
inline constexpr Row kTable2[] = {
    {0.01, -0.001875, -0.001876}, {0.11, -0.020732, -0.02083},
    {0.21, -0.039766, -0.0401393}, {0.31, -0.058969, -0.059813},
    {0.41, -0.078305, -0.079837}, {0.51, -0.097701, -0.10015},
    {0.61, -0.117021, -0.120612}, {0.71, -0.136046, -0.140967},
    {0.81, -0.154444, -0.160774}, {0.91, -0.171734, -0.179321},
    {1.01, -0.187236, -0.195488}, {1.11, -0.200019, -0.207541},
    {1.21, -0.208827, -0.212808}, {1.31, -0.211988, -0.207141},
    {1.41, -0.207302, -0.184002}, {1.51, -0.19189, -0.132774},
    {1.61, -0.162016, -0.0354102}, {1.71, -0.11285, 0.141107},
    {1.81, -0.038213, 0.465149}, {1.91, 0.069632, 1.1178}};

// family 1, values x 1e-4, spot rows incl. both grid endpoints
inline constexpr Row kTable1Spots[] = {{-2.0, 4.933, 1.373}, {-1.0, 4.249, 1.173},
                                       {0.0, 3.618, 0.9906}, {1.0, 3.044, 0.8259},
                                       {1.5, 2.783, 0.7514}, {2.0, 2.553, 0.6859}};

// family 3, values x 1e-4, incl. endpoints and the interior maximum row 2.06
inline constexpr Row kTable3Spots[] = {{2.0, 3.0408, 0.8167}, {2.06, 3.0463, 0.8177},
                                       {2.3, 3.0303, 0.8116}, {2.5, 3.0089, 0.8047},
                                       {2.86, 2.9826, 0.7959}, {3.0, 2.9973, 0.7995}};

// family 4, values x 1e-4, incl. endpoints and the interior maximum row 3.16
inline constexpr Row kTable4Spots[] = {{3.0, 2.9973, 0.7995}, {3.16, 3.0149, 0.8037},
                                       {3.6, 2.9816, 0.7922}, {4.0, 2.9165, 0.7719},
                                       {6.0, 2.3820, 0.6116}, {8.2, 1.6041, 0.3842}};

inline constexpr int kTableDegree = 10;  // perturbation degree the tables correspond to

}  // namespace refdata
