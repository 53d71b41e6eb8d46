/* pipeline: complexZip, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

void fn(){
  static const int t_3[4] = {0, 1, 2, 3};
  int v_1 = 12;
  int v_2 = 1;
  int v_4 = 0;
  while ((v_1 > 0) && (v_4 < 4))
  {
    int const t_5 = v_2;
    v_2++;
    int v_6 = 3;
    int v_7 = t_5 + 1;
    while ((v_6 > 0) && ((v_1 > 0) && (v_4 < 4)))
    {
      v_6--;
      int const t_8 = v_7;
      v_7++;
      if ((t_8 % 2) == 0)
      {
        bool v_9 = true;
        while (v_9)
        {
          int const t_10 = t_3[v_4];
          int const t_11 = t_10 * t_10;
          v_1--;
          if ((t_11 % 2) == 0)
          {
            int const t_12 = t_11 * t_11;
            v_9 = false;
            printf("%d\n", t_12);
            printf("%d\n", t_8);
          }
          v_4++;
          v_9 = v_9 && ((v_1 > 0) && (v_4 < 4));
        }
      }
    }
  }
}
