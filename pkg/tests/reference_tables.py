"""Reference comparison tables, transcribed cell for cell.

Each row is ``(p, R, ns2, det_fluid, markov_chain, approx_markov)``.
"""

# mean window, C=0.4, beta=0.3
WINDOW_BETA03 = [
    (0.01, 1.0, 39.97, 33.33, 37.44, 41.19),
    (0.01, 0.2, 14.3, 13.1, 13.53, 13.1),
    (0.01, 0.1, 12.62, 13.1, 12.5, 13.1),
    (0.01, 0.02, 12.08, 13.1, 12.41, 13.1),
    (0.01, 0.01, 11.53, 13.1, 12.41, 13.1),
    (0.005, 1.0, 69.46, 56.05, 63.78, 69.27),
    (0.005, 0.2, 21.82, 18.53, 21.02, 20.81),
    (0.005, 0.1, 18.29, 18.53, 18.09, 18.53),
    (0.005, 0.02, 17.21, 18.53, 17.73, 18.53),
    (0.005, 0.01, 16.58, 18.53, 17.73, 18.53),
    (0.001, 1.0, 229.96, 187.4, 218.32, 231.63),
    (0.001, 0.2, 67.83, 56.05, 67.92, 69.58),
    (0.001, 0.1, 44.68, 41.43, 44.55, 41.43),
    (0.001, 0.02, 39.4, 41.43, 39.94, 41.43),
    (0.001, 0.01, 38.71, 41.43, 39.94, 41.43),
    (0.0005, 1.0, 384.43, 315.17, 370.12, 388.56),
    (0.0005, 0.2, 113.05, 94.26, 114.52, 117.02),
    (0.0005, 0.1, 69.12, 58.58, 70.05, 69.24),
    (0.0005, 0.02, 55.89, 58.58, 56.66, 58.58),
    (0.0005, 0.01, 55.38, 58.58, 56.66, 58.58),
    (8e-05, 1.0, 1507.19, 1245.81, 1487.19, 1539.87),
    (8e-05, 0.2, 430.49, 372.58, 454.41, 462.57),
    (8e-05, 0.1, 260.91, 221.54, 271.15, 273.69),
    (8e-05, 0.02, 143.99, 146.46, 143.42, 146.46),
    (8e-05, 0.01, 140.83, 146.46, 142.71, 146.46),
]

# goodput in packets/s, C=0.4, beta=0.3
GOODPUT_BETA03 = [
    (0.01, 1.0, 39.55, 32.99, 37.06, 40.78),
    (0.01, 0.2, 70.54, 64.85, 66.99, 64.85),
    (0.01, 0.1, 124.5, 129.69, 123.7, 129.69),
    (0.01, 0.02, 595.41, 648.45, 614.29, 648.45),
    (0.01, 0.01, 1135.12, 1296.9, 1228.58, 1296.9),
    (0.005, 1.0, 69.09, 55.77, 63.46, 68.93),
    (0.005, 0.2, 108.43, 92.19, 104.56, 103.53),
    (0.005, 0.1, 181.75, 184.37, 180.04, 184.37),
    (0.005, 0.02, 854.3, 921.87, 881.97, 921.87),
    (0.005, 0.01, 1645.59, 1843.74, 1763.94, 1843.74),
    (0.001, 1.0, 226.72, 187.21, 218.1, 231.4),
    (0.001, 0.2, 338.76, 279.95, 339.25, 347.46),
    (0.001, 0.1, 446.28, 413.89, 445.09, 413.89),
    (0.001, 0.02, 1966.64, 2069.43, 1994.96, 2069.43),
    (0.001, 0.01, 3862.36, 4138.87, 3989.91, 4138.86),
    (0.0005, 1.0, 384.16, 315.01, 369.94, 389.37),
    (0.0005, 0.2, 564.9, 471.05, 572.3, 584.81),
    (0.0005, 0.1, 690.72, 585.51, 700.16, 692.04),
    (0.0005, 0.02, 2791.22, 2927.54, 2831.66, 2927.54),
    (0.0005, 0.01, 5528.73, 5855.07, 5663.38, 5855.07),
    (8e-05, 1.0, 1506.79, 1245.71, 1487.07, 1539.75),
    (8e-05, 0.2, 2151.97, 1862.77, 2271.86, 2312.64),
    (8e-05, 0.1, 2608.56, 2215.23, 2711.3, 2736.66),
    (8e-05, 0.02, 7195.12, 7322.54, 7170.32, 7322.54),
    (8e-05, 0.01, 14067.18, 14645.07, 14270.0, 14645.07),
]

# mean window, C=0.4, beta=0.2
WINDOW_BETA02 = [
    (0.01, 1.0, 45.41, 37.13, 42.67, 48.69),
    (0.01, 0.2, 15.52, 13.1, 14.53, 14.56),
    (0.01, 0.1, 13.09, 13.1, 12.61, 13.1),
    (0.01, 0.02, 12.09, 13.1, 12.5, 13.1),
    (0.01, 0.01, 11.59, 13.1, 12.5, 13.1),
    (0.005, 1.0, 78.43, 62.44, 72.69, 81.89),
    (0.005, 0.2, 24.56, 18.67, 23.46, 24.49),
    (0.005, 0.1, 19.06, 18.53, 18.31, 18.53),
    (0.005, 0.02, 17.28, 18.53, 17.71, 18.53),
    (0.005, 0.01, 16.69, 18.53, 17.71, 18.53),
    (0.003, 1.0, 116.52, 91.59, 107.53, 120.12),
    (0.003, 0.2, 35.13, 27.39, 34.22, 35.92),
    (0.003, 0.1, 25.47, 23.92, 24.36, 23.92),
    (0.003, 0.02, 22.46, 23.92, 22.88, 23.92),
    (0.003, 0.01, 21.74, 23.92, 22.88, 23.92),
]
