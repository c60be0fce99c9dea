#![allow(clippy::excessive_precision)]

// (x, ln I0(x), I1(x)/I0(x)), evaluated with 50-digit arithmetic (mpmath).
pub const BESSEL_TABLE: [(f64, f64, f64); 71] = [
    (1e-08, 2.49999999999999995e-17, 5.00000000000000010e-09),
    (
        1.7782794100389228e-08,
        7.90569415042094828e-17,
        8.89139705019461411e-09,
    ),
    (
        3.162277660168379e-08,
        2.49999999999999970e-16,
        1.58113883008418926e-08,
    ),
    (
        5.6234132519034905e-08,
        7.90569415042094557e-16,
        2.81170662595174425e-08,
    ),
    (1e-07, 2.49999999999999802e-15, 4.99999999999999382e-08),
    (
        1.7782794100389227e-07,
        7.90569415042093157e-15,
        8.89139705019457771e-08,
    ),
    (
        3.162277660168379e-07,
        2.49999999999998430e-14,
        1.58113883008416974e-07,
    ),
    (
        5.62341325190349e-07,
        7.90569415042079020e-14,
        2.81170662595163401e-07,
    ),
    (1e-06, 2.49999999999984344e-13, 4.99999999999937509e-07),
    (
        1.778279410038923e-06,
        7.90569415041938641e-13,
        8.89139705019110038e-07,
    ),
    (
        3.162277660168379e-06,
        2.49999999999843717e-12,
        1.58113883008221326e-06,
    ),
    (
        5.623413251903491e-06,
        7.90569415040532414e-12,
        2.81170662594063126e-06,
    ),
    (1e-05, 2.49999999998437542e-11, 4.99999999993750039e-06),
    (
        1.778279410038923e-05,
        7.90569415026469956e-11,
        8.89139704984315174e-06,
    ),
    (
        3.1622776601683795e-05,
        2.49999999984375039e-10,
        1.58113882988654750e-05,
    ),
    (
        5.623413251903491e-05,
        7.90569414885844805e-10,
        2.81170662484032056e-05,
    ),
    (0.0001, 2.49999999843750013e-09, 4.99999999375000026e-05),
    (
        0.00017782794100389227,
        7.90569413479594792e-09,
        8.89139701504828103e-05,
    ),
    (
        0.00031622776601683794,
        2.49999998437500016e-08,
        1.58113881031995469e-04,
    ),
    (
        0.0005623413251903491,
        7.90569399417095469e-08,
        2.81170651480928849e-04,
    ),
    (0.001, 2.49999984375001745e-07, 4.99999937500010452e-04),
    (
        0.0017782794100389228,
        7.90569258792149738e-07,
        8.89139353556318390e-04,
    ),
    (
        0.0031622776601683794,
        2.49999843750173609e-06,
        1.58113685366394609e-03,
    ),
    (
        0.005623413251903491,
        7.90567852547584987e-06,
        2.81169551176400955e-03,
    ),
    (0.01, 2.49998437517360910e-05, 4.99993750104164858e-03),
    (
        0.01778279410038923,
        7.90553790591079085e-05,
        8.89104560538910710e-03,
    ),
    (
        0.03162277660168379,
        2.49984376735887302e-04,
        1.58094122066516074e-02,
    ),
    (
        0.05623413251903491,
        7.90413219920379009e-04,
        2.81059578677448178e-02,
    ),
    (0.1, 2.49843923387624376e-03, 4.99376039879389222e-02),
    (
        0.1778279410038923,
        7.89012382825268234e-03,
        8.85643495348210769e-02,
    ),
    (
        0.31622776601683794,
        2.48454640364084677e-02,
        1.56169843313104573e-01,
    ),
    (0.5, 6.15497191854813067e-02, 2.42499612580801938e-01),
    (
        0.5623413251903491,
        7.75471977381777949e-02,
        2.70611999680636817e-01,
    ),
    (1.0, 2.35914358507178651e-01, 4.46389965896534513e-01),
    (
        1.7782794100389228,
        6.73579307973725672e-01,
        6.57789996746005579e-01,
    ),
    (2.0, 8.23993541482956338e-01, 6.97774657964007949e-01),
    (
        3.1622776601683795,
        1.71768625906515515e+00,
        8.21301320846133165e-01,
    ),
    (5.0, 3.30468177582253331e+00, 8.93383137044085229e-01),
    (
        5.623413251903491,
        3.86575729626242115e+00,
        9.06079931183259024e-01,
    ),
    (7.7, 5.77792320961559813e+00, 9.32602939003053133e-01),
    (7.75, 5.82456472298118122e+00, 9.33056566912224272e-01),
    (7.8, 5.87122876448772679e+00, 9.33504085559639818e-01),
    (10.0, 7.94297208311869518e+00, 9.48599825954845932e-01),
    (12.0, 9.84950249910284370e+00, 9.57381405395242191e-01),
    (
        17.78279410038923,
        1.54319795244348938e+01,
        9.71463198601452360e-01,
    ),
    (25.0, 2.24767280049992451e+01, 9.79791453490515885e-01),
    (29.9, 2.72863853105550938e+01, 9.83132833265805695e-01),
    (30.0, 2.73847014331719372e+01, 9.83189555365336143e-01),
    (30.1, 2.74830232089511846e+01, 9.83245897153711024e-01),
    (
        31.622776601683793,
        2.89809167633679472e+01,
        9.84059449530004016e-01,
    ),
    (45.0, 4.21805396043071354e+01, 9.88825738784664621e-01),
    (
        56.23413251903491,
        5.33026750196128773e+01,
        9.91068351263651115e-01,
    ),
    (75.0, 7.19239953454272722e+01, 9.93310808464641148e-01),
    (100.0, 9.67797326899425769e+01, 9.94987373005168818e-01),
    (150.0, 1.46576579950351856e+02, 9.96661073682827858e-01),
    (
        177.82794100389228,
        1.74319299155829441e+02,
        9.97184318100849731e-01,
    ),
    (
        316.22776601683796,
        3.12430992029167271e+02,
        9.98417607197407908e-01,
    ),
    (
        562.341325190349,
        5.58256554637213299e+02,
        9.99110464305385970e-01,
    ),
    (1000.0, 9.95627308889869482e+02, 9.99499874874804295e-01),
    (
        1778.2794100389228,
        1.77361884104204432e+03,
        9.99718789786686046e-01,
    ),
    (
        3162.2776601683795,
        3.15732923725715818e+03,
        9.99841873613036780e-01,
    ),
    (
        5623.413251903491,
        5.61817698855139224e+03,
        9.99911082075947810e-01,
    ),
    (10000.0, 9.99447590378143286e+03, 9.99949998749875002e-01),
    (
        17782.794100389227,
        1.77769821755628727e+04,
        9.99971882538433499e-01,
    ),
    (
        31622.776601683792,
        3.16166768506442604e+04,
        9.99984188486695236e-01,
    ),
    (
        56234.13251903491,
        5.62277449431287096e+04,
        9.99991108563420661e-01,
    ),
    (100000.0, 9.99933245999843202e+04, 9.99994999987499855e-01),
    (
        177827.94100389228,
        1.77820977780192887e+05,
        9.99997188289421191e-01,
    ),
    (
        316227.7660168379,
        3.16220514969694254e+05,
        9.99998418859919913e-01,
    ),
    (
        562341.3251903491,
        5.62333786319895880e+05,
        9.99999110859899676e-01,
    ),
    (1000000.0, 9.99992173306312761e+05, 9.99999499999875030e-01),
];
