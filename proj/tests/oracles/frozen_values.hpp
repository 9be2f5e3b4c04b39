#pragma once

// Generated by tests/oracles/oracle.py. Do not edit by hand.

namespace frozen {

inline constexpr double blue_pbz0 = -0.094464870319053304;
inline constexpr double blue_pbp0_re = 0.046182291613728291;
inline constexpr double blue_pbp0_im = 0.0023931999855853594;
inline constexpr double blue_upsilon_re = 0.00094387132342297394;
inline constexpr double blue_upsilon_im = -0.017790484758703384;
inline constexpr double blue_alpha = -9.4387132342297395;
inline constexpr double blue_upsilon_re_no_d0 = 0.0011223257124717738;
inline constexpr double blue_upsilon_im_no_d0 = 5.4954146185839498e-5;
inline constexpr double blue_alpha_no_d0 = -11.223257124717737;
inline constexpr double blue_shift_coeff_re = -0.00094955012662636213;
inline constexpr double blue_shift_coeff_im = 0.01779023525309379;

inline constexpr double red_pbz0 = -0.094464870319053304;
inline constexpr double red_pbp0_re = -0.046182291613728291;
inline constexpr double red_pbp0_im = 0.0023931999855853594;
inline constexpr double red_upsilon_re = -0.0013007801015205739;
inline constexpr double red_upsilon_im = -0.017900393051075065;
inline constexpr double red_alpha = 13.00780101520574;
inline constexpr double red_upsilon_re_no_d0 = -0.001122325712471774;
inline constexpr double red_upsilon_im_no_d0 = -5.4954146185839505e-5;
inline constexpr double red_alpha_no_d0 = 11.22325712471774;
inline constexpr double red_shift_coeff_re = 0.0013028905218582399;
inline constexpr double red_shift_coeff_im = 0.017900713549234837;

inline constexpr double single_spin_p_plus_re = 0.064864864864864868;
inline constexpr double single_spin_p_plus_im = 0.11351351351351351;
inline constexpr double single_spin_p_z = -0.42162162162162159;

inline constexpr double g_required = 1986917.6531592202;
inline constexpr double r_threshold = 8.0309893447834672e-9;
inline constexpr double t_critical_1mhz = 4.7992430704256329e-5;
inline constexpr double omega_b0_102mt = 17964003784.344869;
inline constexpr double pbz_preset = -0.99988920776362244;
inline constexpr double pbz_286ghz = -0.99988956418059379;
inline constexpr double t_critical_threshold = 1.5176539147324879e-5;

inline constexpr double decay_re_t10 = -0.083823287694333028;
inline constexpr double decay_im_t10 = -0.05434773616983884;

}  // namespace frozen
